#pragma once

#include <string>

#include "stabland/paths.hpp"

namespace stabland {

// Operator specs:
//   identity
//   single-<labels>@x,y,z     labels on every qubit of one site, e.g. single-XI@1,2,3
//   pyramid-<p>@x,y,z         level-p pyramid operator (cubic code)
//   zbar@x,y,z                Z-bar plane operator (cubic code)
//   all-<P>                   P on every qubit
//   line-<P><sub>@rest        P on sub-qubit `sub` of every site along x; `rest`
//                             gives the other coordinates, e.g. line-X1@0
//   file:PATH                 product of the steps in a path file
// A missing "@..." uses `fallback`. Throws std::invalid_argument on bad specs.
PauliOperator parse_operator(const CodeInstance& code, const std::string& spec, const Coord& fallback = {});

// Path specs: pyramid-<p>@x,y,z or file:PATH; anything else is the operator's
// support walked qubit by qubit in ascending order.
ErrorPath parse_path(const CodeInstance& code, const std::string& spec, const Coord& fallback = {});

// "x,y,z" with as many entries as the lattice dimension (missing ones are 0).
Coord parse_coord(const std::string& text);

}  // namespace stabland
