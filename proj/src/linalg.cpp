#include "altbc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace altbc {

CMat CMat::columns(std::size_t first, std::size_t count) const {
  CMat out(rows_, count);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < count; ++c) out.at(r, c) = at(r, first + c);
  }
  return out;
}

namespace {

// Column vectors of the working copy; one-sided Jacobi orthogonalizes pairs.
struct ColView {
  std::vector<Complex> data;  // column-major
  std::size_t rows = 0;
  std::size_t cols = 0;
  Complex& at(std::size_t r, std::size_t c) { return data[c * rows + r]; }
};

}  // namespace

std::vector<double> singular_values(const CMat& m) {
  if (m.rows() == 0 || m.cols() == 0) return {};

  // Work on the transpose when it has fewer columns; sigma is shared.
  bool transpose = m.cols() > m.rows();
  ColView w;
  w.rows = transpose ? m.cols() : m.rows();
  w.cols = transpose ? m.rows() : m.cols();
  w.data.resize(w.rows * w.cols);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (transpose) {
        w.at(c, r) = std::conj(m.at(r, c));
      } else {
        w.at(r, c) = m.at(r, c);
      }
    }
  }

  const double eps = std::numeric_limits<double>::epsilon();
  const std::size_t max_sweeps = 60;
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    bool converged = true;
    for (std::size_t p = 0; p + 1 < w.cols; ++p) {
      for (std::size_t q = p + 1; q < w.cols; ++q) {
        double app = 0.0, aqq = 0.0;
        Complex apq(0.0, 0.0);
        for (std::size_t r = 0; r < w.rows; ++r) {
          app += std::norm(w.at(r, p));
          aqq += std::norm(w.at(r, q));
          apq += std::conj(w.at(r, p)) * w.at(r, q);
        }
        double off = std::abs(apq);
        if (off <= eps * std::sqrt(app * aqq) || off == 0.0) continue;
        converged = false;

        // Absorb the phase of apq into column q, then rotate as in the real
        // case; the phase change does not affect singular values.
        Complex phase = apq / off;
        double tau = (aqq - app) / (2.0 * off);
        double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (std::size_t r = 0; r < w.rows; ++r) {
          Complex vp = w.at(r, p);
          Complex vq = w.at(r, q) * std::conj(phase);
          w.at(r, p) = c * vp - s * vq;
          w.at(r, q) = s * vp + c * vq;
        }
      }
    }
    if (converged) break;
  }

  std::vector<double> sigma(w.cols);
  for (std::size_t c = 0; c < w.cols; ++c) {
    double sq = 0.0;
    for (std::size_t r = 0; r < w.rows; ++r) sq += std::norm(w.at(r, c));
    sigma[c] = std::sqrt(sq);
  }
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

std::size_t numeric_rank(const CMat& m, double rel_tol, double scale) {
  std::vector<double> sigma = singular_values(m);
  if (sigma.empty()) return 0;
  if (scale <= 0.0) scale = sigma.front();
  if (scale == 0.0) return 0;
  double cutoff = rel_tol * scale;
  std::size_t rank = 0;
  for (double s : sigma) {
    if (s > cutoff) ++rank;
  }
  return rank;
}

}  // namespace altbc
