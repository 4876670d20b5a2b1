#include "dcmtf/cfrm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "dcmtf/errors.hpp"
#include "dcmtf/linalg.hpp"
#include "dcmtf/rng.hpp"

namespace dcmtf::cfrm {

Matrix build_m(const core::EntityMatrixGraph& g,
               const std::map<int, cluster::VigorousIndicator>& js, int e) {
  const Index d = g.entity(e).count;
  Matrix m_out = Matrix::Zero(d, d);
  bool touched = false;

  for (const core::DataMatrix& x : g.matrices()) {
    if (x.row_entity == e) {
      auto it = js.find(x.col_entity);
      if (it == js.end())
        throw MissingIndicator("build_m: no indicator for entity " +
                               std::to_string(x.col_entity));
      const Matrix xj = x.values * it->second.j;  // d_e x k_c
      m_out.noalias() += xj * xj.transpose();
      touched = true;
    }
    if (x.col_entity == e) {
      auto it = js.find(x.row_entity);
      if (it == js.end())
        throw MissingIndicator("build_m: no indicator for entity " +
                               std::to_string(x.row_entity));
      const Matrix xtj = x.values.transpose() * it->second.j;  // d_e x k_r
      m_out.noalias() += xtj * xtj.transpose();
      touched = true;
    }
  }
  if (!touched)
    throw MissingIndicator("build_m: entity " + std::to_string(e) +
                           " appears in no matrix");
  return m_out;
}

namespace {

cluster::ClusterIndicator random_indicator(Index n, int k, Rng& rng) {
  // The first k slots of a random permutation pin one instance per cluster
  // so the indicator is never degenerate.
  std::vector<Index> perm(static_cast<size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  for (Index i = n - 1; i > 0; --i)
    std::swap(perm[static_cast<size_t>(i)],
              perm[static_cast<size_t>(rng.uniform_int(static_cast<std::uint64_t>(i + 1)))]);

  std::vector<int> assign(static_cast<size_t>(n));
  for (int u = 0; u < k; ++u) assign[static_cast<size_t>(perm[static_cast<size_t>(u)])] = u;
  for (Index i = k; i < n; ++i)
    assign[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
        static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(k)));
  return cluster::ClusterIndicator::from_assignments(std::move(assign), k);
}

Matrix concatenated_views(const core::EntityMatrixGraph& g, int e) {
  const std::vector<int> nbrs = g.neighbors(e);
  Index width = 0;
  for (int m : nbrs) width += g.view(e, m).data.cols();
  Matrix out(g.entity(e).count, width);
  Index at = 0;
  for (int m : nbrs) {
    const Matrix v = g.view(e, m).data;
    out.middleCols(at, v.cols()) = v;
    at += v.cols();
  }
  return out;
}

}  // namespace

CfrmResult src_fit(const core::EntityMatrixGraph& g, const CfrmOptions& opts) {
  if (opts.sweeps < 1) throw LengthMismatch("src_fit: sweeps must be >= 1");

  std::map<int, cluster::ClusterIndicator> inds;
  std::map<int, cluster::VigorousIndicator> js;
  for (const core::Entity& e : g.entities()) {
    if (opts.init == Init::Random) {
      Rng rng(Rng::derive(opts.seed, 0x696e6974ULL, static_cast<std::uint64_t>(e.id)));
      inds[e.id] = random_indicator(e.count, e.k, rng);
    } else {
      inds[e.id] = cluster::kmeans(concatenated_views(g, e), e.k,
                                   Rng::derive(opts.seed, 0x696e6974ULL,
                                               static_cast<std::uint64_t>(e.id)),
                                   opts.kmeans_restarts)
                       .indicator;
    }
    js[e.id] = cluster::to_vigorous(inds[e.id]);
  }

  CfrmResult res;
  res.max_rayleigh_gap = 0.0;

  for (int sweep = 0; sweep < opts.sweeps; ++sweep) {
    const std::map<int, cluster::VigorousIndicator> snapshot = js;
    const std::map<int, cluster::VigorousIndicator>& source =
        (opts.order == UpdateOrder::Jacobi) ? snapshot : js;

    bool changed = false;
    double objective = 0.0;
    for (const core::Entity& e : g.entities()) {
      const Matrix m_e = build_m(g, source, e.id);
      const linalg::EigResult eig = linalg::sym_eig(m_e, e.k, linalg::Which::Largest);
      res.embeddings[e.id] = eig.vectors;

      const double relaxed = (eig.vectors.transpose() * m_e * eig.vectors).trace();
      res.max_rayleigh_gap =
          std::max(res.max_rayleigh_gap, std::abs(relaxed - eig.values.sum()));

      cluster::KMeansResult km = cluster::kmeans(
          eig.vectors, e.k,
          Rng::derive(opts.seed, static_cast<std::uint64_t>(sweep + 1),
                      static_cast<std::uint64_t>(e.id)),
          opts.kmeans_restarts);
      if (km.indicator.assignments != inds[e.id].assignments) changed = true;
      inds[e.id] = km.indicator;
      js[e.id] = cluster::to_vigorous(km.indicator);

      objective += (js[e.id].j.transpose() * m_e * js[e.id].j).trace();
    }
    res.trace_history.push_back(objective);
    res.sweeps_run = sweep + 1;
    if (!changed) {
      res.converged = true;
      break;
    }
  }

  res.indicators = inds;
  for (const core::DataMatrix& x : g.matrices())
    res.associations.push_back(association(x, js.at(x.row_entity), js.at(x.col_entity)));
  return res;
}

AssociationMatrix association(const core::DataMatrix& x,
                              const cluster::VigorousIndicator& j_r,
                              const cluster::VigorousIndicator& j_c) {
  if (j_r.j.rows() != x.values.rows() || j_c.j.rows() != x.values.cols())
    throw ShapeMismatch("association: indicator shapes do not match matrix " +
                        std::to_string(x.id));
  AssociationMatrix out;
  out.matrix_id = x.id;
  out.a = j_r.j.transpose() * x.values * j_c.j;
  return out;
}

ClusterChain extract_chains(const core::EntityMatrixGraph& g,
                            const std::vector<AssociationMatrix>& assocs,
                            const ChainStart& start, int max_len) {
  std::map<int, const Matrix*> by_id;
  for (const AssociationMatrix& a : assocs) by_id[a.matrix_id] = &a.a;

  auto assoc_of = [&](int m) -> const Matrix& {
    auto it = by_id.find(m);
    if (it == by_id.end())
      throw BadStart("extract_chains: no association matrix for matrix " +
                     std::to_string(m));
    return *it->second;
  };

  const Matrix& a0 = assoc_of(start.matrix_id);
  if (start.row_cluster < 0 || start.row_cluster >= a0.rows() ||
      start.col_cluster < 0 || start.col_cluster >= a0.cols())
    throw BadStart("extract_chains: start block out of range");

  ClusterChain chain;
  chain.links.push_back({start.matrix_id, start.row_cluster, start.col_cluster,
                         a0(start.row_cluster, start.col_cluster)});
  std::set<int> visited{start.matrix_id};

  while (static_cast<int>(chain.links.size()) < max_len) {
    const ChainLink& cur = chain.links.back();
    const core::DataMatrix& cur_m = g.matrix(cur.matrix_id);
    const std::pair<int, int> ends[2] = {{cur_m.row_entity, cur.row_cluster},
                                         {cur_m.col_entity, cur.col_cluster}};

    // Best continuation over both ends of the current block, ordered by
    // (-|A|, matrix id, row cluster, col cluster).
    bool found = false;
    ChainLink best{};
    double best_abs = -1.0;
    for (const auto& [entity, clus] : ends) {
      for (int m : g.neighbors(entity)) {
        if (visited.count(m)) continue;
        const core::DataMatrix& dm = g.matrix(m);
        const Matrix& am = assoc_of(m);
        if (dm.row_entity == entity) {
          for (Index w = 0; w < am.cols(); ++w) {
            ChainLink cand{m, clus, static_cast<int>(w), am(clus, w)};
            const double mag = std::abs(cand.strength);
            if (mag > best_abs ||
                (mag == best_abs &&
                 std::tie(cand.matrix_id, cand.row_cluster, cand.col_cluster) <
                     std::tie(best.matrix_id, best.row_cluster, best.col_cluster))) {
              best = cand;
              best_abs = mag;
              found = true;
            }
          }
        }
        if (dm.col_entity == entity) {
          for (Index w = 0; w < am.rows(); ++w) {
            ChainLink cand{m, static_cast<int>(w), clus, am(w, clus)};
            const double mag = std::abs(cand.strength);
            if (mag > best_abs ||
                (mag == best_abs &&
                 std::tie(cand.matrix_id, cand.row_cluster, cand.col_cluster) <
                     std::tie(best.matrix_id, best.row_cluster, best.col_cluster))) {
              best = cand;
              best_abs = mag;
              found = true;
            }
          }
        }
      }
    }

    if (!found) break;
    if (best_abs == 0.0) {
      chain.dead_end = true;
      break;
    }
    chain.links.push_back(best);
    visited.insert(best.matrix_id);
  }
  return chain;
}

}  // namespace dcmtf::cfrm
