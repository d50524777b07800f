#include "pdlg/dense.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "pdlg/error.hpp"

namespace pdlg {

void fill_uniform(Mat& m, Rng& rng, double lo, double hi) {
  for (double& v : m.a) v = rng.uniform(lo, hi);
}

double dot(const double* x, const double* y, int n) {
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void bag_embed_into(const Mat& m, std::span<const int> tokens, double* out) {
  std::memset(out, 0, sizeof(double) * m.rows);
  for (int t : tokens) {
    const double* c = m.col(t);
    for (int i = 0; i < m.rows; ++i) out[i] += c[i];
  }
}

Vec bag_embed(const Mat& m, std::span<const int> tokens) {
  Vec out(m.rows);
  bag_embed_into(m, tokens, out.data());
  return out;
}

double score_pair(const Mat& A, const Mat& B, std::span<const int> x,
                  std::span<const int> y) {
  Vec ax = bag_embed(A, x);
  Vec by = bag_embed(B, y);
  return dot(ax.data(), by.data(), A.rows);
}

void softmax_inplace(std::span<double> s) {
  if (s.empty()) return;
  double mx = *std::max_element(s.begin(), s.end());
  double z = 0.0;
  for (double& v : s) {
    v = std::exp(v - mx);
    z += v;
  }
  for (double& v : s) v /= z;
}

void matvec_into(const Mat& R, const double* u, double* out) {
  std::memset(out, 0, sizeof(double) * R.rows);
  for (int j = 0; j < R.cols; ++j) {
    const double* c = R.col(j);
    double uj = u[j];
    for (int i = 0; i < R.rows; ++i) out[i] += uj * c[i];
  }
}

void add_outer(Mat& R, const double* g, const double* u, double scale) {
  for (int j = 0; j < R.cols; ++j) {
    double* c = R.col(j);
    double s = scale * u[j];
    for (int i = 0; i < R.rows; ++i) c[i] += s * g[i];
  }
}

HingeResult hinge_rank_loss(double margin, double pos,
                            std::span<const double> negs) {
  HingeResult r;
  r.active.assign(negs.size(), 0);
  r.kink_distance = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < negs.size(); ++i) {
    double h = margin - pos + negs[i];
    r.kink_distance = std::min(r.kink_distance, std::fabs(h));
    if (h > 0.0) {
      r.loss += h;
      r.active[i] = 1;
    }
  }
  return r;
}

void sgd_step(std::span<double> params, std::span<const double> grads,
              double lr) {
  if (params.size() != grads.size())
    throw TrainingError("sgd_step: size mismatch");
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (!std::isfinite(grads[i]))
      throw TrainingError("sgd_step: non-finite gradient");
    params[i] -= lr * grads[i];
  }
}

GradCheckReport grad_check(const std::function<LossProbe()>& loss_fn,
                           std::span<double> params,
                           std::span<const double> analytic_grad, double eps,
                           Rng& rng, int max_coords) {
  if (params.size() != analytic_grad.size())
    throw TrainingError("grad_check: size mismatch");
  std::size_t n = params.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (max_coords > 0 && static_cast<std::size_t>(max_coords) < n) {
    rng.shuffle(order);
    order.resize(static_cast<std::size_t>(max_coords));
  }
  GradCheckReport rep;
  for (std::size_t idx : order) {
    double saved = params[idx];
    params[idx] = saved + eps;
    LossProbe hi = loss_fn();
    params[idx] = saved - eps;
    LossProbe lo = loss_fn();
    params[idx] = saved;
    // a central difference straddling a hinge kink is meaningless; skip
    // coordinates whose perturbed evaluations came close to one
    if (hi.kink_distance < 10.0 * eps || lo.kink_distance < 10.0 * eps) {
      ++rep.skipped;
      continue;
    }
    double numeric = (hi.loss - lo.loss) / (2.0 * eps);
    double analytic = analytic_grad[idx];
    double denom = std::max({std::fabs(numeric), std::fabs(analytic), 1.0});
    rep.max_rel_err = std::max(rep.max_rel_err, std::fabs(numeric - analytic) / denom);
    ++rep.checked;
  }
  return rep;
}

}  // namespace pdlg
