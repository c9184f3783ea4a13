#include "argd/bures_wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace argd {

namespace {

double step_limit(const SymMatrix& factor) {
  const EigenDecomposition eig = sym_eig(factor);
  const double lo = eig.eigenvalues[0];
  return lo >= 0.0 ? kInfinity : -1.0 / lo;
}

}  // namespace

BuresWasserstein::BuresWasserstein(std::size_t n) : n_(n) {
  if (n < 1) throw std::invalid_argument("BuresWasserstein: dimension must be positive");
}

BuresWasserstein::Tangent BuresWasserstein::egrad_to_rgrad(const Point& x,
                                                           const EuclideanGradient& g,
                                                           EvalStats* stats) const {
  if (g.size() != n_) throw std::invalid_argument("BuresWasserstein: dimension mismatch");
  const Matrix xg = matmul(x.X, g);
  const Matrix gxg = matmul(g, xg);
  count_matmul(stats, 2);
  // Under <U, V>_X = 1/2 Tr(L_X(U) V) the gradient is 2 (X G + G X), whose
  // Lyapunov factor is 2 G.
  return Tangent{SymMatrix::symmetrize(xg + xg.transpose()) * 2.0, g * 2.0,
                 SymMatrix::symmetrize(gxg) * 4.0};
}

SymMatrix BuresWasserstein::lyapunov_factor(const Point& x, const Tangent& v) const {
  if (v.lyapunov) return *v.lyapunov;
  return solve_lyapunov(x.X, v.V);
}

BuresWasserstein::Tangent BuresWasserstein::with_factor(const Point& x, const SymMatrix& v) const {
  return Tangent{v, solve_lyapunov(x.X, v), std::nullopt};
}

BuresWasserstein::Point BuresWasserstein::exp(const Point& x, const Tangent& v,
                                              EvalStats* stats) const {
  const SymMatrix factor = lyapunov_factor(x, v);
  const double limit = step_limit(factor);
  if (!(limit > 1.0)) {
    throw StepDomainError("BuresWasserstein::exp: step leaves the domain (max step " +
                          std::to_string(limit) + ")",
                          limit);
  }
  SymMatrix quad;
  if (v.quadratic) {
    quad = *v.quadratic;
  } else {
    quad = SymMatrix::symmetrize(matmul(matmul(factor, x.X), factor));
    count_matmul(stats, 2);
  }
  const SymMatrix y = x.X + v.V + quad;
  if (!is_spd(y)) {
    throw StepDomainError("BuresWasserstein::exp: result is not positive definite", limit);
  }
  return Point{y};
}

BuresWasserstein::Tangent BuresWasserstein::transport_along_step(const Point& x, const Tangent& v,
                                                                 const Tangent& w,
                                                                 EvalStats* stats) const {
  const double vv = trace_of_product(v.V, v.V);
  if (vv == 0.0) return w;
  const double c = trace_of_product(w.V, v.V) / vv;
  const double mismatch = frobenius_norm(w.V - v.V * c);
  if (mismatch > 1e-8 * std::max(1.0, frobenius_norm(w.V))) {
    throw std::invalid_argument(
        "BuresWasserstein::transport_along_step: only the step direction can be transported");
  }
  SymMatrix quad;
  if (v.quadratic) {
    quad = *v.quadratic;
  } else {
    const SymMatrix factor = lyapunov_factor(x, v);
    quad = SymMatrix::symmetrize(matmul(matmul(factor, x.X), factor));
    count_matmul(stats, 2);
  }
  return Tangent{(v.V + quad * 2.0) * c, std::nullopt, std::nullopt};
}

double BuresWasserstein::inner(const Point& x, const Tangent& u, const Tangent& v) const {
  if (u.lyapunov) return 0.5 * trace_of_product(*u.lyapunov, v.V);
  if (v.lyapunov) return 0.5 * trace_of_product(*v.lyapunov, u.V);
  return 0.5 * trace_of_product(solve_lyapunov(x.X, u.V), v.V);
}

double BuresWasserstein::norm(const Point& x, const Tangent& v) const {
  return std::sqrt(std::max(0.0, inner(x, v, v)));
}

double BuresWasserstein::distance(const Point& x, const Point& y) const {
  const SymMatrix root = spd_sqrt(x.X);
  const SymMatrix middle = SymMatrix::symmetrize(matmul(matmul(root, y.X), root));
  const double sq = trace(x.X) + trace(y.X) - 2.0 * trace(spd_sqrt(middle));
  return std::sqrt(std::max(0.0, sq));
}

double BuresWasserstein::max_step(const Point& x, const Tangent& v) const {
  return step_limit(lyapunov_factor(x, v));
}

BuresWasserstein::Tangent BuresWasserstein::scale(const Tangent& v, double s) const {
  Tangent out{v.V * s, std::nullopt, std::nullopt};
  if (v.lyapunov) out.lyapunov = *v.lyapunov * s;
  if (v.quadratic) out.quadratic = *v.quadratic * (s * s);
  return out;
}

double BuresWasserstein::transported_difference_norm(const Point& x, const Tangent& g,
                                                     const Tangent& transported,
                                                     double prev_norm) const {
  if (!g.lyapunov) {
    throw std::invalid_argument(
        "BuresWasserstein::transported_difference_norm: gradient factor not cached");
  }
  const double sq =
      inner(x, g, g) - 2.0 * inner(x, g, transported) + prev_norm * prev_norm;
  return std::sqrt(std::max(0.0, sq));
}

BuresWasserstein::Point BuresWasserstein::project(const Ambient& raw) const {
  if (raw.rows() != n_ || raw.cols() != n_) {
    throw std::invalid_argument("BuresWasserstein::project: dimension mismatch");
  }
  SymMatrix x = SymMatrix::symmetrize(raw);
  if (!is_spd(x)) throw std::domain_error("BuresWasserstein::project: matrix is not SPD");
  return Point{std::move(x)};
}

}  // namespace argd
