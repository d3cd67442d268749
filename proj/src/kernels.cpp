#include "charur/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <mutex>

#include "charur/error.hpp"

namespace charur::kernels {

namespace {

inline cplx row_dot(const CMatrix& m, Eigen::Index row, const CVector& x) {
  double re = 0.0, im = 0.0;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const cplx a = m(row, c);
    const cplx b = x(c);
    re += a.real() * b.real() - a.imag() * b.imag();
    im += a.real() * b.imag() + a.imag() * b.real();
  }
  return {re, im};
}

// <y_i, y_j> = sum conj(y_i) y_j.
inline cplx col_inner(const CMatrix& y, Eigen::Index i, Eigen::Index j) {
  double re = 0.0, im = 0.0;
  for (Eigen::Index k = 0; k < y.rows(); ++k) {
    const cplx a = y(k, i);
    const cplx b = y(k, j);
    re += a.real() * b.real() + a.imag() * b.imag();
    im += a.real() * b.imag() - a.imag() * b.real();
  }
  return {re, im};
}

void check_ops(const std::vector<const CMatrix*>& ops, const CVector& psi) {
  for (const CMatrix* m : ops) {
    if (m->rows() != psi.size() || m->cols() != psi.size()) {
      fail(ErrorKind::BasisMismatch, "apply_ops: operator and vector dimensions differ");
    }
  }
}

void mirror(CMatrix& g) {
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) g(i, j) = std::conj(g(j, i));
  }
}

}  // namespace

CMatrix apply_ops_serial(const std::vector<const CMatrix*>& ops, const CVector& psi) {
  check_ops(ops, psi);
  const Eigen::Index n = psi.size();
  CMatrix y(n, static_cast<Eigen::Index>(ops.size()));
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (Eigen::Index r = 0; r < n; ++r) y(r, i) = row_dot(*ops[i], r, psi);
  }
  return y;
}

CMatrix apply_ops_parallel(const std::vector<const CMatrix*>& ops, const CVector& psi) {
  check_ops(ops, psi);
  const Eigen::Index n = psi.size();
  const Eigen::Index total = n * static_cast<Eigen::Index>(ops.size());
  CMatrix y(n, static_cast<Eigen::Index>(ops.size()));
#pragma omp parallel for schedule(static)
  for (Eigen::Index t = 0; t < total; ++t) {
    const Eigen::Index i = t / n;
    const Eigen::Index r = t % n;
    y(r, i) = row_dot(*ops[i], r, psi);
  }
  return y;
}

CMatrix gram_serial(const CMatrix& y) {
  const Eigen::Index m = y.cols();
  CMatrix g(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = i; j < m; ++j) g(i, j) = col_inner(y, i, j);
  }
  mirror(g);
  return g;
}

CMatrix gram_parallel(const CMatrix& y) {
  const Eigen::Index m = y.cols();
  CMatrix g(m, m);
#pragma omp parallel for schedule(dynamic)
  for (Eigen::Index t = 0; t < m * m; ++t) {
    const Eigen::Index i = t / m;
    const Eigen::Index j = t % m;
    if (j >= i) g(i, j) = col_inner(y, i, j);
  }
  mirror(g);
  return g;
}

int effective_jobs(int jobs) {
  if (jobs <= 0) return std::max(1, omp_get_max_threads());
  return jobs;
}

void map_grid(int n, const std::function<void(int)>& body, int jobs) {
  const int threads = effective_jobs(jobs);
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::mutex guard;
  int failed_index = n;
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < n; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(guard);
      if (i < failed_index) {
        failed_index = i;
        failure = std::current_exception();
      }
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace charur::kernels
