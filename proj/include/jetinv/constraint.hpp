#pragma once

#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "jetinv/scalar.hpp"

namespace jetinv {

using ParamValues = std::map<std::string, Scalar>;

// Right-hand side of a clause: a number or an earlier parameter.
struct Bound {
  Scalar value;
  std::string param;

  Scalar resolve(const ParamValues& env) const;
  std::string str() const;
};

struct Clause {
  enum class Op { Ge, Gt, Le, Lt, Eq, Ne, AbsGe, AbsGt, AbsLe, AbsLt, Integer };
  Op op;
  Bound bound;
};

// Conjunction of clauses from the mini-grammar:
//   free | >= c | > c | <= c | < c | = c | ne c | abs<=c | abs<c | abs>c |
//   abs>=c | in (c1,c2] | int
// where c is a rational literal or the name of an earlier parameter.
class Constraint {
 public:
  Constraint() = default;
  static Constraint parse(std::string_view text);

  bool is_free() const { return clauses_.empty(); }
  bool satisfied(const Scalar& v, const ParamValues& env = {}) const;
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::string str() const;

 private:
  std::vector<Clause> clauses_;
};

struct ParamDecl {
  std::string name;
  Constraint constraint;
};

// Draws rational values satisfying every constraint, in declaration order.
// Throws ConstraintError if no value is found.
ParamValues sample_params(const std::vector<ParamDecl>& decls, std::mt19937_64& rng,
                          const ParamValues& fixed = {});
Scalar sample_value(const Constraint& c, const ParamValues& env, std::mt19937_64& rng);

}  // namespace jetinv
