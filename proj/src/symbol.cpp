#include "jetinv/symbol.hpp"

#include <functional>
#include <stdexcept>

namespace jetinv {

Symbol Symbol::jet(int k) {
  if (k < 0) throw std::invalid_argument("negative jet order");
  if (k == 0) return y();
  return Symbol(Kind::Jet, k, {});
}

Symbol Symbol::param(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty parameter name");
  return Symbol(Kind::Param, 0, std::move(name));
}

int Symbol::jet_order() const {
  switch (kind_) {
    case Kind::Y: return 0;
    case Kind::Jet: return order_;
    default: return -1;
  }
}

std::string Symbol::str() const {
  switch (kind_) {
    case Kind::X: return "x";
    case Kind::Y: return "y";
    case Kind::Jet:
      if (order_ <= 3) return "y" + std::string(static_cast<std::size_t>(order_), '\'');
      return "y^(" + std::to_string(order_) + ")";
    case Kind::Param: return name_;
    case Kind::Lambda: return "lambda";
  }
  return "?";
}

std::size_t Symbol::hash() const {
  std::size_t h = static_cast<std::size_t>(kind_) * 1000003u + static_cast<std::size_t>(order_);
  if (kind_ == Kind::Param) h ^= std::hash<std::string>{}(name_);
  return h;
}

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (auto c = a.order_ <=> b.order_; c != 0) return c;
  int c = a.name_.compare(b.name_);
  return c < 0 ? std::strong_ordering::less
               : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

}  // namespace jetinv
