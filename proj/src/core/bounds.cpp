#include "bounds.hpp"

#include "error.hpp"
#include "reduction.hpp"
#include "transforms.hpp"

namespace skellab {

std::string TowerExpr::to_string() const {
    if (auto v = tower_expand(*this, 4096)) return v->str();
    return "2_" + std::to_string(height) + "^(" + top.str() + ")";
}

TowerExpr tower(uint64_t k, BigInt x) { return TowerExpr{static_cast<int>(k), std::move(x)}; }

static uint64_t bit_length(const BigInt& v) {
    if (v <= 0) return 0;
    return boost::multiprecision::msb(v) + 1;
}

bool tower_leq(const BigInt& lhs, const TowerExpr& t) {
    if (t.height == -1) {
        // lhs <= log2(top)  iff  2^lhs <= top
        if (lhs < 0) return true;
        if (lhs > 1000000000) return bit_length(t.top) > 1000000000;  // practically never
        return bit_length(t.top) >= static_cast<uint64_t>(lhs) + 1;
    }
    if (t.height == 0) return lhs <= t.top;
    // lhs <= 2^T  iff  lhs <= 1 or ceil(log2(lhs)) <= T
    if (lhs <= 1) return true;
    BigInt reduced = bit_length(lhs - 1);
    return tower_leq(reduced, TowerExpr{t.height - 1, t.top});
}

std::optional<BigInt> tower_expand(const TowerExpr& t, uint64_t max_bits) {
    if (t.height == -1) {
        // exact only when top is a power of two
        if (t.top <= 0) return std::nullopt;
        uint64_t b = bit_length(t.top);
        if (BigInt(1) << (b - 1) != t.top) return std::nullopt;
        return BigInt(b - 1);
    }
    BigInt v = t.top;
    for (int k = 0; k < t.height; k++) {
        if (v < 0 || v > max_bits) return std::nullopt;
        v = BigInt(1) << static_cast<uint64_t>(v);
    }
    if (bit_length(v) > max_bits) return std::nullopt;
    return v;
}

static BigInt ipow(const BigInt& base, uint64_t e) {
    BigInt r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

TowerExpr bound_thm416(const SkelPtr& a) {
    SkelMeasures m = skel_measures(a);
    if (m.order < 1 || m.depth < 1 || m.max < 1)
        fail(Err::DomainError, "bound_thm416 needs ord, depth, max >= 1");
    return TowerExpr{static_cast<int>(m.order) - 2, ipow(BigInt(m.max) + 1, m.depth)};
}

TowerExpr bound_thm417(uint64_t n, uint64_t p, uint64_t d) {
    if (n < 1 || p < 1 || d < 3) fail(Err::DomainError, "bound_thm417 needs n,p >= 1, d >= 3");
    BigInt top = 1;
    for (uint64_t k = 1; k <= n; k++) top += 2 * ipow(BigInt(p), k);
    return TowerExpr{static_cast<int>(d) - 3, top};
}

TowerExpr bound_prop550(const TermPtr& m) {
    if (!scope_report(m).stronglyLocallyScoped)
        fail(Err::DomainError, "bound_prop550 needs a strongly locally scoped term");
    TermMeasures tm = measures(m);
    if (tm.order < 1) fail(Err::DomainError, "bound_prop550 needs order >= 1");
    BigInt base = BigInt(tm.localHeight) + tm.order + 1;
    return TowerExpr{static_cast<int>(tm.order) - 2, ipow(base, tm.depth)};
}

TowerExpr bound_prop566(const TermPtr& m) {
    TermMeasures tm = measures(m);
    BigInt base = BigInt(tm.order) + 5;
    return TowerExpr{static_cast<int>(tm.order) - 1, ipow(base, tm.height)};
}

// ---- families -------------------------------------------------------------------

TermPtr church_numeral(uint64_t n, int p) {
    if (p < 0) fail(Err::DomainError, "church_numeral needs p >= 0");
    TypePtr fa = church_type(p - 1);
    TypePtr xa = church_type(p - 2);
    VarId f = 1, x = 2;
    TermPtr body = Term::mk_var(x, "x", xa);
    for (uint64_t i = 0; i < n; i++) body = Term::mk_app(Term::mk_var(f, "f", fa), body);
    return Term::mk_abs(f, "f", fa, Term::mk_abs(x, "x", xa, body));
}

TermPtr identity_term(const TypePtr& a) {
    return Term::mk_abs(1, "x", a, Term::mk_var(1, "x", a));
}

TermPtr iter_tower(uint64_t n, int p, uint64_t k) {
    if (p < 0) fail(Err::DomainError, "iter_tower needs p >= 0");
    TermPtr t = barendregt(church_numeral(2, p));
    for (uint64_t i = 0; i < k; i++)
        t = barendregt(Term::mk_app(church_numeral(n, p + 1), t));
    return barendregt(t);
}

TermPtr family_S(uint64_t n, uint64_t k, uint64_t p) {
    TermPtr t = iter_tower(n, static_cast<int>(p), k);
    for (int q = static_cast<int>(p) - 1; q >= 0; q--)
        t = Term::mk_app(t, barendregt(church_numeral(2, q)));
    return barendregt(t);
}

TermPtr family_U(uint64_t n, uint64_t d) {
    if (d < 1) fail(Err::DomainError, "family_U needs d >= 1");
    TypePtr oo = Type::arrow(Type::ground(), Type::ground());
    TermPtr t = identity_term(oo);  // identity at o->o, of type A_0
    for (uint64_t i = 0; i < d; i++)
        t = barendregt(Term::mk_app(church_numeral(n, 1), t));
    return barendregt(t);
}

TermPtr family_B(uint64_t k, uint64_t p) {
    if (p < 1) fail(Err::DomainError, "family_B needs p >= 1");
    // b_0^p = 2_p ; b_{j+1}^p = \x:A_{p-1}. b_j (b_j x)
    TermPtr b = church_numeral(2, static_cast<int>(p));
    TypePtr xa = church_type(static_cast<int>(p) - 1);
    for (uint64_t j = 0; j < k; j++) {
        VarId x = 1;
        TermPtr inner = Term::mk_app(barendregt(b), Term::mk_var(x, "x", xa));
        TermPtr outer = Term::mk_app(barendregt(b), inner);
        b = barendregt(Term::mk_abs(x, "x", xa, outer));
    }
    TermPtr t = b;
    for (int q = static_cast<int>(p) - 1; q >= 0; q--)
        t = Term::mk_app(t, barendregt(church_numeral(2, q)));
    return barendregt(t);
}

TermPtr gen_family(const FamilySpec& spec) {
    switch (spec.kind) {
        case FamilySpec::Kind::Numeral:
            return barendregt(church_numeral(spec.a, static_cast<int>(spec.b)));
        case FamilySpec::Kind::Iter:
            return iter_tower(spec.a, static_cast<int>(spec.b), spec.c);
        case FamilySpec::Kind::S:
            return family_S(spec.a, spec.b, spec.c);
        case FamilySpec::Kind::U:
            return family_U(spec.a, spec.b);
        case FamilySpec::Kind::B:
            return family_B(spec.a, spec.b);
    }
    fail(Err::DomainError, "unknown family");
}

LowerBoundResult verify_lower_bound(const TermPtr& m, uint64_t beta_budget, uint64_t lhr_budget) {
    TermPtr nf = beta_normalize(m, beta_budget);
    std::optional<uint64_t> n = numeral_value(nf);
    if (!n) fail(Err::NotNumeral, "term does not beta-normalize to a Church numeral");
    TermPtr applied = Term::mk_app(m, identity_term(Type::ground()));
    LhrTrace tr = lhr_run(applied, lhr_budget);
    if (tr.haltReason == HaltReason::BudgetExceeded)
        fail(Err::BudgetExceeded, "lhr budget exhausted in verify_lower_bound");
    LowerBoundResult r;
    r.claimed = *n;
    r.observed = tr.length();
    r.ok = r.observed >= r.claimed;
    return r;
}

} // namespace skellab
