#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

#include "skeleton.hpp"
#include "term.hpp"

namespace skellab {

using BigInt = boost::multiprecision::cpp_int;

// Iterated exponential 2_k^x: tower(0,x) = x, tower(k+1,x) = 2^tower(k,x).
// Comparisons use the identity 2_{k+1}^x = 2_k^(2^x) and bit-length
// shortcuts; nothing is ever rounded. Internally height may be -1, giving the
// "log2(top)" form needed for order-1 bounds: lhs <= value iff 2^lhs <= top.
struct TowerExpr {
    int height = 0;
    BigInt top;

    std::string to_string() const;
};

TowerExpr tower(uint64_t k, BigInt x);

// Exact comparison lhs <= 2_k^x. Never expands the tower.
bool tower_leq(const BigInt& lhs, const TowerExpr& t);

// Full expansion when the result fits in max_bits; nullopt otherwise.
std::optional<BigInt> tower_expand(const TowerExpr& t, uint64_t max_bits);

// Thm 4.16: N(a) <= 2_{ord-1}^{depth * log2(max+1)}, i.e. tower(ord-2,
// (max+1)^depth) for ord >= 2 and the exact log form for ord = 1. Requires
// ord, depth, max >= 1.
TowerExpr bound_thm416(const SkelPtr& a);

// Thm 4.17: N(n[{d}p]) <= tower(d-3, 1 + sum_{k=1..n} 2 p^k); n,p >= 1, d >= 3.
TowerExpr bound_thm417(uint64_t n, uint64_t p, uint64_t d);

// Prop 5.50: for sls terms of order >= 1,
//   N(M) <= 2_{ord-1}^{depth * log2(lh + ord + 1)}.
TowerExpr bound_prop550(const TermPtr& m);

// Prop 5.66: for every term, N(M) <= 2_{ord}^{h * log2(ord + 5)}.
TowerExpr bound_prop566(const TermPtr& m);

// ---- lower-bound term families ------------------------------------------------

// Church numeral n at type A_p (A_{-2} = o, A_{k+1} = A_k -> A_k).
TermPtr church_numeral(uint64_t n, int p);

// [n]_p^k(2_p): iterated application of n_{p+1}.
TermPtr iter_tower(uint64_t n, int p, uint64_t k);

// S_{n,k,p} = [n]_p^k(2_p) 2_{p-1} ... 2_0.
TermPtr family_S(uint64_t n, uint64_t k, uint64_t p);

// U_{n,d}: d copies of n_1 applied to the identity at type o->o.
TermPtr family_U(uint64_t n, uint64_t d);

// B_k^p = b_k^p 2_{p-1} ... 2_0 with b_0^p = 2_p, b_{j+1}^p = \x. b_j^p (b_j^p x).
TermPtr family_B(uint64_t k, uint64_t p);

// \x:A. x
TermPtr identity_term(const TypePtr& a);

struct FamilySpec {
    enum class Kind { Numeral, Iter, S, U, B } kind;
    uint64_t a = 0, b = 0, c = 0;  // indices, in the order of the family name
};

TermPtr gen_family(const FamilySpec& spec);

struct LowerBoundResult {
    uint64_t claimed = 0;
    uint64_t observed = 0;
    bool ok = false;
};

// Lemma 5.51 check: M must beta-normalize to a numeral n (NotNumeral
// otherwise); observed is the lhr step count of M id_o.
LowerBoundResult verify_lower_bound(const TermPtr& m, uint64_t beta_budget, uint64_t lhr_budget);

} // namespace skellab
