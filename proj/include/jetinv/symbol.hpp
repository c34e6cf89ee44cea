#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace jetinv {

// A variable of the jet space or a named parameter.
class Symbol {
 public:
  enum class Kind : std::uint8_t { X, Y, Jet, Param, Lambda };

  static Symbol x() { return Symbol(Kind::X, 0, {}); }
  static Symbol y() { return Symbol(Kind::Y, 0, {}); }
  // jet(0) is y itself.
  static Symbol jet(int k);
  static Symbol param(std::string name);
  static Symbol lambda() { return Symbol(Kind::Lambda, 0, {}); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // k for y^(k) (0 for y); -1 for symbols off the jet fibre.
  int jet_order() const;
  bool is_coordinate() const { return kind_ == Kind::X || kind_ == Kind::Y || kind_ == Kind::Jet; }

  std::string str() const;
  std::size_t hash() const;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);

 private:
  Symbol(Kind kind, int order, std::string name)
      : kind_(kind), order_(order), name_(std::move(name)) {}

  Kind kind_;
  int order_;
  std::string name_;
};

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const { return s.hash(); }
};

}  // namespace jetinv
