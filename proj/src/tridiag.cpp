#include "threewave/tridiag.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace threewave {

namespace {

// Sturm count for one unreduced chunk: ratios q_k = Delta_k / Delta_{k-1}
// are the LDL^T pivots of (T - x); negatives count eigenvalues below x.
int count_below_chunk(const double* d, const double* b, int m, double x) {
  int count = 0;
  double q = d[0] - x;
  if (q < 0) ++count;
  for (int k = 1; k < m; ++k) {
    double denom = q;
    if (denom == 0.0) denom = 1e-300;
    q = (d[k] - x) - b[k - 1] * b[k - 1] / denom;
    if (q < 0) ++count;
  }
  return count;
}

}  // namespace

int tridiag_count_below(const Eigen::VectorXd& diag,
                        const Eigen::VectorXd& offdiag, double x) {
  return count_below_chunk(diag.data(), offdiag.size() ? offdiag.data() : nullptr,
                           int(diag.size()), x);
}

Eigen::VectorXd tridiag_eigenvector(const Eigen::VectorXd& diag,
                                    const Eigen::VectorXd& offdiag,
                                    double lambda) {
  const int m = int(diag.size());
  if (m == 1) return Eigen::VectorXd::Ones(1);

  // LU with partial pivoting of (T - lambda I); band structure: one
  // subdiagonal, up to two superdiagonals of fill-in.
  std::vector<double> dd(m), du(m, 0.0), du2(m, 0.0), dl(m, 0.0);
  auto factor_and_solve = [&](Eigen::VectorXd v) {
    for (int i = 0; i < m; ++i) dd[i] = diag(i) - lambda;
    for (int i = 0; i + 1 < m; ++i) {
      dl[i] = offdiag(i);
      du[i] = offdiag(i);
      du2[i] = 0.0;
    }
    const double scale = std::max(diag.cwiseAbs().maxCoeff(),
                                  offdiag.size() ? offdiag.cwiseAbs().maxCoeff()
                                                 : 0.0);
    const double tiny = 1e-20 * std::max(scale, 1.0) +
                        std::numeric_limits<double>::min();
    for (int i = 0; i + 1 < m; ++i) {
      if (std::abs(dd[i]) >= std::abs(dl[i])) {
        double piv = (std::abs(dd[i]) < tiny) ? tiny : dd[i];
        const double f = dl[i] / piv;
        dd[i + 1] -= f * du[i];
        if (i + 2 < m) {
          // du2[i] is zero here, no update needed beyond du[i+1]
        }
        v(i + 1) -= f * v(i);
      } else {
        // swap rows i and i+1
        std::swap(dd[i], dl[i]);
        const double tmp_du = du[i];
        du[i] = dd[i + 1];
        dd[i + 1] = tmp_du;
        if (i + 2 < m) {
          du2[i] = du[i + 1];
          du[i + 1] = 0.0;
        }
        std::swap(v(i), v(i + 1));
        double piv = (std::abs(dd[i]) < tiny) ? tiny : dd[i];
        const double f = dl[i] / piv;
        dd[i + 1] -= f * du[i];
        if (i + 2 < m) du[i + 1] -= f * du2[i];
        v(i + 1) -= f * v(i);
      }
      dl[i] = 0.0;
    }
    // back substitution
    Eigen::VectorXd x(m);
    for (int i = m - 1; i >= 0; --i) {
      double s = v(i);
      if (i + 1 < m) s -= du[i] * x(i + 1);
      if (i + 2 < m) s -= du2[i] * x(i + 2);
      double piv = dd[i];
      if (std::abs(piv) < tiny) piv = (piv >= 0 ? tiny : -tiny);
      x(i) = s / piv;
    }
    return x;
  };

  // deterministic start vector
  Eigen::VectorXd v(m);
  unsigned long long s = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < m; ++i) {
    s = s * 6364136223846793005ull + 1442695040888963407ull;
    v(i) = 0.5 + double(s >> 11) / 9007199254740992.0;
  }
  v.normalize();
  for (int it = 0; it < 3; ++it) {
    v = factor_and_solve(v);
    v.normalize();
  }
  // fix sign: make the largest-magnitude entry positive
  int imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  return v;
}

TridiagEigen tridiag_eigen(const Eigen::VectorXd& diag,
                           const Eigen::VectorXd& offdiag) {
  const int m = int(diag.size());
  if (m < 1) throw std::invalid_argument("tridiag_eigen: empty matrix");
  if (offdiag.size() != m - 1)
    throw std::invalid_argument("tridiag_eigen: offdiag size must be m-1");

  TridiagEigen out;
  out.values.resize(m);
  out.vectors = Eigen::MatrixXd::Zero(m, m);

  // split into unreduced chunks at exact zero couplings
  int chunk_begin = 0;
  std::vector<std::pair<double, std::pair<int, int>>> evs;  // (lambda, chunk)
  evs.reserve(m);
  for (int end = 0; end < m; ++end) {
    const bool last = (end == m - 1) || (offdiag(end) == 0.0);
    if (!last) continue;
    const int n = end - chunk_begin + 1;
    Eigen::VectorXd d = diag.segment(chunk_begin, n);
    Eigen::VectorXd b =
        n > 1 ? offdiag.segment(chunk_begin, n - 1) : Eigen::VectorXd();

    // Gershgorin interval
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n; ++i) {
      double r = 0.0;
      if (i > 0) r += std::abs(b(i - 1));
      if (i < n - 1) r += std::abs(b(i));
      lo = std::min(lo, d(i) - r);
      hi = std::max(hi, d(i) + r);
    }
    const double span = std::max(hi - lo, 1e-300);
    lo -= 1e-12 * span + 1e-300;
    hi += 1e-12 * span + 1e-300;

    for (int k = 0; k < n; ++k) {
      double a = lo, c = hi;
      for (int it = 0; it < 120 && (c - a) > 1e-16 * std::max(1.0, std::abs(a) + std::abs(c)); ++it) {
        const double mid = 0.5 * (a + c);
        if (count_below_chunk(d.data(), n > 1 ? b.data() : nullptr, n, mid) <= k)
          a = mid;
        else
          c = mid;
      }
      evs.push_back({0.5 * (a + c), {chunk_begin, n}});
    }
    chunk_begin = end + 1;
  }

  std::sort(evs.begin(), evs.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  const double scale =
      std::max({diag.cwiseAbs().maxCoeff(),
                m > 1 ? offdiag.cwiseAbs().maxCoeff() : 0.0, 1e-300});
  for (int j = 0; j < m; ++j) {
    const double lambda = evs[j].first;
    const auto [cb, n] = evs[j].second;
    Eigen::VectorXd d = diag.segment(cb, n);
    Eigen::VectorXd b = n > 1 ? offdiag.segment(cb, n - 1) : Eigen::VectorXd();
    Eigen::VectorXd v = tridiag_eigenvector(d, b, lambda);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(m);
    full.segment(cb, n) = v;
    // re-orthogonalize within a near-degenerate cluster
    for (int k = j - 1; k >= 0 && lambda - evs[k].first < 1e-8 * scale; --k)
      full -= out.vectors.col(k).dot(full) * out.vectors.col(k);
    full.normalize();
    out.values(j) = lambda;
    out.vectors.col(j) = full;
  }
  return out;
}

}  // namespace threewave
