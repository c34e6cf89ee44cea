#include "jetinv/transform.hpp"

#include "jetinv/errors.hpp"
#include "jetinv/parse.hpp"

namespace jetinv {

namespace {

const Expr& X() {
  static const Expr x(Symbol::x());
  return x;
}
const Expr& Y() {
  static const Expr y(Symbol::y());
  return y;
}

Bindings plane(const Expr& x, const Expr& y) { return {{Symbol::x(), x}, {Symbol::y(), y}}; }

}  // namespace

PointTransformation::PointTransformation(Expr fx, Expr fy, Expr ix, Expr iy, const ZeroPolicy& policy)
    : fx_(std::move(fx)), fy_(std::move(fy)), ix_(std::move(ix)), iy_(std::move(iy)) {
  for (const Expr* e : {&fx_, &fy_, &ix_, &iy_}) {
    for (const auto& s : free_symbols(*e)) {
      if (s.kind() == Symbol::Kind::Jet || s.kind() == Symbol::Kind::Lambda) {
        throw ArityError("point transformations live on the (x, y) plane");
      }
    }
  }
  Bindings f = plane(fx_, fy_), i = plane(ix_, iy_);
  bool ok = is_zero(substitute(ix_, f) - X(), policy) && is_zero(substitute(iy_, f) - Y(), policy) &&
            is_zero(substitute(fx_, i) - X(), policy) && is_zero(substitute(fy_, i) - Y(), policy);
  if (!ok) throw DomainError("the stored inverse does not invert the map");
}

PointTransformation PointTransformation::swap_xy() { return {Y(), X(), Y(), X()}; }

PointTransformation PointTransformation::scaling(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) throw SingularMatrixError("degenerate scaling");
  return {Expr(a) * X(), Expr(b) * Y(), X() / Expr(a), Y() / Expr(b)};
}

VectorField pushforward(const VectorField& v, const PointTransformation& t) {
  Bindings back = plane(t.inverse_x(), t.inverse_y());
  return {substitute(apply(v, t.forward_x()), back), substitute(apply(v, t.forward_y()), back)};
}

Realization pushforward(const Realization& r, const PointTransformation& t) {
  Realization out = r;
  for (auto& f : out.basis) f = pushforward(f, t);
  return out;
}

Realization change_basis(const Realization& r, const ScalarMatrix& m) {
  const auto n = static_cast<Eigen::Index>(r.dim());
  if (m.rows() != n || m.cols() != n) throw SingularMatrixError("basis change has the wrong size");
  if (exact_determinant(m).is_zero()) throw SingularMatrixError("basis change is singular");
  Realization out = r;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Expr> xi, eta;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (m(i, j).is_zero()) continue;
      xi.push_back(Expr(m(i, j)) * r.basis[static_cast<std::size_t>(j)].xi);
      eta.push_back(Expr(m(i, j)) * r.basis[static_cast<std::size_t>(j)].eta);
    }
    out.basis[static_cast<std::size_t>(i)] = {make_sum(std::move(xi)), make_sum(std::move(eta))};
  }
  return out;
}

bool same_field(const VectorField& a, const VectorField& b, const ZeroPolicy& policy) {
  return is_zero(a.xi - b.xi, policy) && is_zero(a.eta - b.eta, policy);
}

Table2Result apply_table2(const Table2Row& row, const Realization& source, const ParamValues& params,
                          const ZeroPolicy& policy) {
  ZeroPolicy pol = policy;
  pol.positive_coordinates = pol.positive_coordinates || row.positive_domain;
  ParseContext ctx;
  for (const auto& [name, v] : params) ctx.constants[name] = Expr(v);

  Table2Result out;
  out.before = source;
  const auto n = static_cast<Eigen::Index>(source.dim());
  if (static_cast<Eigen::Index>(row.matrix.size()) != n) {
    out.failure = "basis change has " + std::to_string(row.matrix.size()) + " rows for " + std::to_string(n) + " fields";
    return out;
  }
  out.matrix = ScalarMatrix(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& line = row.matrix[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(line.size()) != n) {
      out.failure = "basis change row " + std::to_string(i + 1) + " has the wrong length";
      return out;
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      Expr e = parse_expr(line[static_cast<std::size_t>(j)], ctx);
      if (!e.is_const()) {
        out.failure = "basis change entry '" + line[static_cast<std::size_t>(j)] + "' is not a number";
        return out;
      }
      out.matrix(i, j) = e.value();
    }
  }

  std::optional<PointTransformation> t;
  try {
    t.emplace(parse_expr(row.map_x, ctx), parse_expr(row.map_y, ctx), parse_expr(row.inverse_x, ctx),
              parse_expr(row.inverse_y, ctx), pol);
    out.roundtrip = true;
  } catch (const DomainError& e) {
    out.failure = e.what();
    return out;
  }

  Realization pushed = pushforward(source, *t);
  out.after = change_basis(pushed, out.matrix);
  out.after.label = source.label + " -> " + row.target;

  out.brackets_preserved = true;
  for (std::size_t i = 0; i < source.dim() && out.brackets_preserved; ++i) {
    for (std::size_t j = i + 1; j < source.dim(); ++j) {
      VectorField lhs = pushforward(lie_bracket(source.basis[i], source.basis[j]), *t);
      VectorField rhs = lie_bracket(pushed.basis[i], pushed.basis[j]);
      if (!same_field(lhs, rhs, pol)) {
        out.brackets_preserved = false;
        out.failure = "bracket [e" + std::to_string(i + 1) + ", e" + std::to_string(j + 1) + "] not preserved";
        break;
      }
    }
  }

  try {
    StructureConstants before = closure_check(source, pol);
    StructureConstants after = closure_check(out.after, pol);
    out.after_closed = true;
    StructureConstants expected = before.transformed(out.matrix);
    out.conjugation_law = true;
    for (std::size_t i = 0; i < source.dim(); ++i)
      for (std::size_t j = 0; j < source.dim(); ++j)
        for (std::size_t k = 0; k < source.dim(); ++k)
          if (!(expected(i, j, k) == after(i, j, k))) out.conjugation_law = false;
    if (!out.conjugation_law && out.failure.empty()) out.failure = "structure constants do not follow the basis change";
  } catch (const Error& e) {
    if (out.failure.empty()) out.failure = e.what();
  }
  return out;
}

A48Reduction reduce_a48(const Scalar& b_prime) {
  const Expr one(1), zero(0), bp(b_prime);
  A48Reduction out;
  out.lie_form.basis = {{zero, one}, {one, zero}, {zero, X()}, {X(), (1 + bp) * Y()}};
  Realization swapped = pushforward(out.lie_form, PointTransformation::swap_xy());

  const bool small = !(b_prime.re() > 1 || b_prime.re() < -1);
  if (small) {
    ScalarMatrix id = ScalarMatrix::Identity(4, 4);
    out.reduced = change_basis(swapped, id);
    out.expected.basis = {{one, zero}, {zero, one}, {Y(), zero}, {(1 + bp) * X(), Y()}};
  } else {
    const Scalar b = Scalar(1) / b_prime;
    ScalarMatrix m = ScalarMatrix::Zero(4, 4);
    m(0, 0) = b_prime;
    m(1, 2) = Scalar(1);
    m(2, 1) = -b_prime;
    m(3, 3) = b;
    out.reduced = pushforward(change_basis(swapped, m), PointTransformation::scaling(b, b));
    const Expr be(b);
    out.expected.basis = {{one, zero}, {Y(), zero}, {zero, -one}, {(1 + be) * X(), be * Y()}};
  }
  out.field_by_field = out.reduced.basis == out.expected.basis;
  return out;
}

}  // namespace jetinv
