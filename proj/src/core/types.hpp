#pragma once

#include <cstdint>
#include <memory>
#include <string>

namespace skellab {

// Simple types over the single base type o.
class Type;
using TypePtr = std::shared_ptr<const Type>;

class Type {
public:
    static TypePtr ground();
    static TypePtr arrow(TypePtr domain, TypePtr codomain);

    bool is_ground() const { return !dom_; }
    const TypePtr& dom() const { return dom_; }
    const TypePtr& cod() const { return cod_; }

    // lv(o) = 0, lv(A -> B) = max(lv(A)+1, lv(B))
    int level() const { return level_; }
    // size(o) = 1, size(A -> B) = size(A) + size(B)
    uint64_t size() const { return size_; }

    // Arity and result chain: A1 -> ... -> An -> o.
    int arity() const;
    TypePtr arg(int i) const;  // A_{i+1}, 0-based

    std::string to_string() const;

    friend bool operator==(const Type& a, const Type& b);

private:
    Type() = default;
    TypePtr dom_, cod_;
    int level_ = 0;
    uint64_t size_ = 1;
};

bool operator==(const Type& a, const Type& b);
inline bool operator!=(const Type& a, const Type& b) { return !(a == b); }
bool type_eq(const TypePtr& a, const TypePtr& b);

// A_{-2} = o, A_{n+1} = A_n -> A_n (Church numeral type tower).
TypePtr church_type(int p);

} // namespace skellab
