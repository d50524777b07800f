#include "pdlg/memnn.hpp"

#include "pdlg/embed_model.hpp"
#include "pdlg/error.hpp"

namespace pdlg {

MemNNHyper memnn_default_hyper(int task) {
  MemNNHyper hp;
  switch (task) {
    case 1:
    case 2: hp.hops = 1; break;
    case 3:
    case 4:
    case 5: hp.hops = 3; break;
    default: throw CorpusError("unknown task id " + std::to_string(task));
  }
  return hp;
}

void MemNNModel::init(int vocab_size, Rng& rng) {
  A = Mat(hp.dim, vocab_size);
  fill_uniform(A, rng, -0.1, 0.1);
  R.assign(hp.hops, Mat(hp.dim, hp.dim));
  for (Mat& r : R) fill_uniform(r, rng, -0.1, 0.1);
  T = Mat(hp.dim, hp.max_memories);
  fill_uniform(T, rng, -0.1, 0.1);
}

MemView build_memories(const TokDialog& td, int context_entries, bool split,
                       int max_memories) {
  MemView mem;
  if (split) {
    for (const std::vector<int>& a : td.profile_attrs) mem.prof.emplace_back(a);
    int keep = std::min(context_entries, max_memories);
    for (int i = context_entries - keep; i < context_entries; ++i)
      mem.conv.emplace_back(td.entries[i]);
  } else {
    mem.conv.emplace_back(td.profile_entry);
    int keep = std::min(context_entries, max_memories - 1);
    for (int i = context_entries - keep; i < context_entries; ++i)
      mem.conv.emplace_back(td.entries[i]);
  }
  return mem;
}

void memnn_forward(const MemNNModel& model, const MemView& mem,
                   std::span<const int> query, MemNNForward& f) {
  const int d = model.dim();
  const int nc = static_cast<int>(mem.conv.size());
  const int np = static_cast<int>(mem.prof.size());

  f.m.assign(nc, Vec(d));
  for (int i = 0; i < nc; ++i) {
    bag_embed_into(model.A, mem.conv[i], f.m[i].data());
    const double* t = model.T.col(nc - 1 - i);  // recency index
    for (int k = 0; k < d; ++k) f.m[i][k] += t[k];
  }
  f.g.assign(np, Vec(d));
  for (int h = 0; h < np; ++h)
    bag_embed_into(model.A, mem.prof[h], f.g[h].data());

  f.u.assign(model.hp.hops + 1, Vec(d));
  bag_embed_into(model.A, query, f.u[0].data());
  f.p.assign(model.hp.hops, Vec());
  f.q.assign(model.hp.hops, Vec());

  for (int k = 0; k < model.hp.hops; ++k) {
    const Vec& u = f.u[k];
    Vec& p = f.p[k];
    p.resize(nc);
    for (int i = 0; i < nc; ++i) p[i] = dot(u.data(), f.m[i].data(), d);
    softmax_inplace(p);
    Vec o(d, 0.0);
    for (int i = 0; i < nc; ++i)
      for (int j = 0; j < d; ++j) o[j] += p[i] * f.m[i][j];
    if (model.split) {
      Vec& q = f.q[k];
      q.resize(np);
      for (int h = 0; h < np; ++h) q[h] = dot(u.data(), f.g[h].data(), d);
      softmax_inplace(q);
      for (int h = 0; h < np; ++h)
        for (int j = 0; j < d; ++j) o[j] += q[h] * f.g[h][j];
    }
    Vec& next = f.u[k + 1];
    matvec_into(model.R[k], u.data(), next.data());
    for (int j = 0; j < d; ++j) next[j] += o[j];
  }
}

double memnn_score(const MemNNModel& model, const MemNNForward& f,
                   std::span<const int> cand) {
  Vec c = bag_embed(model.A, cand);
  return dot(f.u.back().data(), c.data(), model.dim());
}

namespace {

// ds = p * (dp - sum_j p_j dp_j), written into dp
void softmax_backward_inplace(const Vec& p, Vec& dp) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * dp[i];
  for (std::size_t i = 0; i < p.size(); ++i) dp[i] = p[i] * (dp[i] - s);
}

void axpy(double a, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

}  // namespace

LossProbe memnn_loss_grad(MemNNModel& model, const MemView& mem,
                          std::span<const int> query, std::span<const int> gold,
                          std::span<const std::span<const int>> negs,
                          MemNNGrads* out, double apply_lr) {
  const int d = model.dim();
  const int K = model.hp.hops;
  MemNNForward f;
  memnn_forward(model, mem, query, f);
  const Vec& uK = f.u[K];

  Vec cg = bag_embed(model.A, gold);
  double pos = dot(uK.data(), cg.data(), d);
  std::vector<Vec> cn(negs.size());
  Vec scores(negs.size());
  for (std::size_t i = 0; i < negs.size(); ++i) {
    cn[i] = bag_embed(model.A, negs[i]);
    scores[i] = dot(uK.data(), cn[i].data(), d);
  }
  HingeResult h = hinge_rank_loss(model.hp.margin, pos, scores);

  MemNNGrads grads;
  grads.dR.assign(K, Mat(d, d));
  if (h.loss == 0.0) {  // flat region: zero gradient everywhere
    if (out) *out = std::move(grads);
    return {0.0, h.kink_distance};
  }

  // dL/du^K and candidate-side embedding grads
  Vec du(d, 0.0);
  int n_active = 0;
  for (std::size_t i = 0; i < negs.size(); ++i) {
    if (!h.active[i]) continue;
    ++n_active;
    for (int k = 0; k < d; ++k) du[k] += cn[i][k] - cg[k];
    Vec dc = uK;  // +u^K toward each active negative
    for (int t : negs[i]) grads.A_cols.emplace_back(t, dc);
  }
  if (n_active > 0) {
    Vec dcg(d);
    for (int k = 0; k < d; ++k) dcg[k] = -n_active * uK[k];
    for (int t : gold) grads.A_cols.emplace_back(t, dcg);
  }

  const int nc = static_cast<int>(mem.conv.size());
  const int np = static_cast<int>(mem.prof.size());
  std::vector<Vec> dm(nc, Vec(d, 0.0));
  std::vector<Vec> dg(np, Vec(d, 0.0));

  for (int k = K - 1; k >= 0; --k) {
    const Vec& u = f.u[k];
    // u^{k+1} = R_k u^k + o^k  with  o^k = sum_i p_i m_i (+ sum_h q_h g_h)
    add_outer(grads.dR[k], du.data(), u.data(), 1.0);
    Vec du_prev(d, 0.0);
    for (int j = 0; j < d; ++j)
      du_prev[j] = dot(model.R[k].col(j), du.data(), d);  // R^T du

    const Vec& p = f.p[k];
    Vec dp(nc);
    for (int i = 0; i < nc; ++i) dp[i] = dot(du.data(), f.m[i].data(), d);
    softmax_backward_inplace(p, dp);  // now holds ds
    for (int i = 0; i < nc; ++i) {
      axpy(p[i], du, dm[i]);
      axpy(dp[i], u, dm[i]);
      axpy(dp[i], f.m[i], du_prev);
    }
    if (model.split && np > 0) {
      const Vec& q = f.q[k];
      Vec dq(np);
      for (int hh = 0; hh < np; ++hh) dq[hh] = dot(du.data(), f.g[hh].data(), d);
      softmax_backward_inplace(q, dq);
      for (int hh = 0; hh < np; ++hh) {
        axpy(q[hh], du, dg[hh]);
        axpy(dq[hh], u, dg[hh]);
        axpy(dq[hh], f.g[hh], du_prev);
      }
    }
    du = std::move(du_prev);
  }

  // du is now dL/du^0 = grad through the query bag
  for (int t : query) grads.A_cols.emplace_back(t, du);
  for (int i = 0; i < nc; ++i) {
    for (int t : mem.conv[i]) grads.A_cols.emplace_back(t, dm[i]);
    grads.T_cols.emplace_back(nc - 1 - i, dm[i]);
  }
  for (int hh = 0; hh < np; ++hh)
    for (int t : mem.prof[hh]) grads.A_cols.emplace_back(t, dg[hh]);

  if (apply_lr > 0.0 && n_active > 0) {
    for (const auto& [c, v] : grads.A_cols)
      sgd_step({model.A.col(c), (std::size_t)d}, v, apply_lr);
    for (int k = 0; k < K; ++k)
      sgd_step(model.R[k].a, grads.dR[k].a, apply_lr);
    for (const auto& [c, v] : grads.T_cols)
      sgd_step({model.T.col(c), (std::size_t)d}, v, apply_lr);
  }
  if (out) *out = std::move(grads);
  return {h.loss, h.kink_distance};
}

double memnn_train_step(MemNNModel& model, const MemView& mem,
                        std::span<const int> query, int gold,
                        const CandTokens& cands, Rng& rng) {
  std::vector<int> neg_ids =
      sample_negatives(cands.count(), model.hp.negatives, gold, rng);
  std::vector<std::span<const int>> negs;
  negs.reserve(neg_ids.size());
  for (int c : neg_ids) negs.push_back(cands.get(c));
  LossProbe p =
      memnn_loss_grad(model, mem, query, cands.get(gold), negs, nullptr, model.hp.lr);
  return p.loss;
}

}  // namespace pdlg
