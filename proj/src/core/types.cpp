#include "types.hpp"

#include <algorithm>
#include <stdexcept>

namespace skellab {

TypePtr Type::ground() {
    static const TypePtr o = TypePtr(new Type());
    return o;
}

TypePtr Type::arrow(TypePtr domain, TypePtr codomain) {
    auto t = new Type();
    t->dom_ = std::move(domain);
    t->cod_ = std::move(codomain);
    t->level_ = std::max(t->dom_->level_ + 1, t->cod_->level_);
    t->size_ = t->dom_->size_ + t->cod_->size_;
    return TypePtr(t);
}

int Type::arity() const {
    int n = 0;
    for (const Type* t = this; !t->is_ground(); t = t->cod_.get()) n++;
    return n;
}

TypePtr Type::arg(int i) const {
    const Type* t = this;
    for (int k = 0; k < i; k++) {
        if (t->is_ground()) throw std::out_of_range("Type::arg");
        t = t->cod_.get();
    }
    if (t->is_ground()) throw std::out_of_range("Type::arg");
    return t->dom_;
}

std::string Type::to_string() const {
    if (is_ground()) return "o";
    std::string d = dom_->to_string();
    if (!dom_->is_ground()) d = "(" + d + ")";
    return d + "->" + cod_->to_string();
}

bool operator==(const Type& a, const Type& b) {
    if (&a == &b) return true;
    if (a.is_ground() != b.is_ground()) return false;
    if (a.is_ground()) return true;
    if (a.level_ != b.level_ || a.size_ != b.size_) return false;
    return *a.dom_ == *b.dom_ && *a.cod_ == *b.cod_;
}

bool type_eq(const TypePtr& a, const TypePtr& b) {
    return a == b || (a && b && *a == *b);
}

TypePtr church_type(int p) {
    if (p < -2) throw std::out_of_range("church_type");
    TypePtr t = Type::ground();
    for (int k = -2; k < p; k++) t = Type::arrow(t, t);
    return t;
}

} // namespace skellab
