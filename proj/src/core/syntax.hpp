#pragma once

#include <string>

#include "skeleton.hpp"
#include "term.hpp"

namespace skellab {

// Concrete term grammar:
//   type ::= 'o' | type '->' type (right assoc) | '(' type ')'
//   term ::= '\' ident ':' type '.' term | app
//   app  ::= atom atom*            (left assoc)
//   atom ::= ident | '*' ':' type | '(' term ')'
// Identifiers: [a-zA-Z][a-zA-Z0-9_']*. Whitespace insignificant. Terms must
// be closed (there is no free-variable declaration syntax).
TermPtr parse_term(const std::string& text);
TypePtr parse_type(const std::string& text);

std::string print_term(const TermPtr& term);
std::string print_type(const TypePtr& type);

// Skeleton grammar: skel ::= nat | nat '[' edge (',' edge)* ']'
//                   edge ::= '{' nat '}' skel
SkelPtr parse_skeleton(const std::string& text);
std::string print_skeleton(const SkelPtr& s);

} // namespace skellab
