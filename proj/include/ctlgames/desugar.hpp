#pragma once

#include "ctlgames/syntax.hpp"

namespace ctlgames {

/// Expands every surface form into the core grammar plus the constants
/// new, new_exn and callcc. Total on parsed terms.
///
///   a := V               match a as (x,y). x V
///   deref(a)             match a as (x,y). y ()
///   catch e in N         match e as (x,y). x (fun _:1. N)
///   throw(e)             match e as (x,y). y ()
///   new x:T := V in M    let x = new{T} () in (x := V ; M)
///   new x:T in M         let x = new{T} () in M
///   new_exn e in M       let e = new_exn () in M
///   M ; N                let _ = M in N
///   handle e in N with M callcc(fun k. (catch e in N ; k ())) ; M
///   if V then M else N   case V as in1(_). M | in2(_). N
///   tt, ff               in1(()), in2(()) at 1 + 1
///   new_exn{T}           value-carrying exception declaration
///   resumable_exn{T}     resumable exception declaration
TermPtr desugar(const TermPtr& t);

}  // namespace ctlgames
