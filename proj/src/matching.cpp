#include "moca/matching.hpp"

#include <algorithm>
#include <deque>

#include "moca/errors.hpp"

namespace moca {

namespace {

// Primal-dual maximum-weight matching with blossom shrinking, the classical
// O(V^3)-style formulation on an adjacency matrix. Vertices are 1-based;
// ids above n denote shrunk blossoms. Edge weights are doubled inside
// e_delta so that all dual values stay integral.
class WeightedBlossom {
 public:
  explicit WeightedBlossom(const std::vector<std::vector<mpz_class>>& weight) : n_(static_cast<int>(weight.size())) {
    int cap = 2 * n_ + 8;
    g_.assign(cap, std::vector<Edge>(cap));
    for (int u = 1; u < cap; ++u)
      for (int v = 1; v < cap; ++v) g_[u][v] = Edge{u, v, mpz_class(0)};
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v)
        if (u != v) g_[u][v].w = weight[u - 1][v - 1];
    lab_.assign(cap, mpz_class(0));
    match_.assign(cap, 0);
    slack_.assign(cap, 0);
    st_.assign(cap, 0);
    pa_.assign(cap, 0);
    S_.assign(cap, -1);
    vis_.assign(cap, 0);
    flower_.assign(cap, {});
    flower_from_.assign(cap, std::vector<int>(n_ + 1, 0));
  }

  /// Runs augmentation phases to exhaustion; returns mate (1-based, 0 = none).
  std::vector<int> run() {
    n_x_ = n_;
    for (int u = 0; u <= n_; ++u) {
      st_[u] = u;
      flower_[u].clear();
    }
    mpz_class w_max(0);
    for (int u = 1; u <= n_; ++u)
      for (int v = 1; v <= n_; ++v) {
        flower_from_[u][v] = (u == v ? u : 0);
        if (g_[u][v].w > w_max) w_max = g_[u][v].w;
      }
    for (int u = 1; u <= n_; ++u) lab_[u] = w_max;
    while (phase()) {
    }
    return match_;
  }

 private:
  struct Edge {
    int u = 0, v = 0;
    mpz_class w;
  };

  mpz_class e_delta(const Edge& e) const { return lab_[e.u] + lab_[e.v] - g_[e.u][e.v].w * 2; }

  void update_slack(int u, int x) {
    if (!slack_[x] || e_delta(g_[u][x]) < e_delta(g_[slack_[x]][x])) slack_[x] = u;
  }

  void set_slack(int x) {
    slack_[x] = 0;
    for (int u = 1; u <= n_; ++u)
      if (g_[u][x].w > 0 && st_[u] != x && S_[st_[u]] == 0) update_slack(u, x);
  }

  void q_push(int x) {
    if (x <= n_) {
      q_.push_back(x);
      return;
    }
    for (int y : flower_[x]) q_push(y);
  }

  void set_st(int x, int b) {
    st_[x] = b;
    if (x > n_)
      for (int y : flower_[x]) set_st(y, b);
  }

  int get_pr(int b, int xr) {
    int pr = static_cast<int>(std::find(flower_[b].begin(), flower_[b].end(), xr) - flower_[b].begin());
    if (pr % 2 == 1) {
      std::reverse(flower_[b].begin() + 1, flower_[b].end());
      return static_cast<int>(flower_[b].size()) - pr;
    }
    return pr;
  }

  void set_match(int u, int v) {
    match_[u] = g_[u][v].v;
    if (u <= n_) return;
    const Edge& e = g_[u][v];
    int xr = flower_from_[u][e.u];
    int pr = get_pr(u, xr);
    for (int i = 0; i < pr; ++i) set_match(flower_[u][i], flower_[u][i ^ 1]);
    set_match(xr, v);
    std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
  }

  void augment(int u, int v) {
    for (;;) {
      int xnv = st_[match_[u]];
      set_match(u, v);
      if (!xnv) return;
      set_match(xnv, st_[pa_[xnv]]);
      u = st_[pa_[xnv]];
      v = xnv;
    }
  }

  int get_lca(int u, int v) {
    for (++timer_; u || v; std::swap(u, v)) {
      if (u == 0) continue;
      if (vis_[u] == timer_) return u;
      vis_[u] = timer_;
      u = st_[match_[u]];
      if (u) u = st_[pa_[u]];
    }
    return 0;
  }

  void add_blossom(int u, int lca, int v) {
    int b = n_ + 1;
    while (b <= n_x_ && st_[b]) ++b;
    if (b > n_x_) ++n_x_;
    lab_[b] = 0;
    S_[b] = 0;
    match_[b] = match_[lca];
    flower_[b].clear();
    flower_[b].push_back(lca);
    for (int x = u, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    std::reverse(flower_[b].begin() + 1, flower_[b].end());
    for (int x = v, y; x != lca; x = st_[pa_[y]]) {
      flower_[b].push_back(x);
      flower_[b].push_back(y = st_[match_[x]]);
      q_push(y);
    }
    set_st(b, b);
    for (int x = 1; x <= n_x_; ++x) {
      g_[b][x].w = 0;
      g_[x][b].w = 0;
    }
    for (int x = 1; x <= n_; ++x) flower_from_[b][x] = 0;
    for (int xs : flower_[b]) {
      for (int x = 1; x <= n_x_; ++x)
        if (g_[xs][x].w > 0 && (g_[b][x].w == 0 || e_delta(g_[xs][x]) < e_delta(g_[b][x]))) {
          g_[b][x] = g_[xs][x];
          g_[x][b] = g_[x][xs];
        }
      for (int x = 1; x <= n_; ++x)
        if (flower_from_[xs][x]) flower_from_[b][x] = xs;
    }
    set_slack(b);
  }

  void expand_blossom(int b) {
    for (int xs : flower_[b]) set_st(xs, xs);
    int xr = flower_from_[b][g_[b][pa_[b]].u];
    int pr = get_pr(b, xr);
    for (int i = 0; i < pr; i += 2) {
      int xs = flower_[b][i];
      int xns = flower_[b][i + 1];
      pa_[xs] = g_[xns][xs].u;
      S_[xs] = 1;
      S_[xns] = 0;
      slack_[xs] = 0;
      set_slack(xns);
      q_push(xns);
    }
    S_[xr] = 1;
    pa_[xr] = pa_[b];
    for (int i = pr + 1; i < static_cast<int>(flower_[b].size()); ++i) {
      int xs = flower_[b][i];
      S_[xs] = -1;
      set_slack(xs);
    }
    st_[b] = 0;
  }

  bool on_found_edge(const Edge& e) {
    int u = st_[e.u];
    int v = st_[e.v];
    if (S_[v] == -1) {
      pa_[v] = e.u;
      S_[v] = 1;
      int nu = st_[match_[v]];
      slack_[v] = 0;
      slack_[nu] = 0;
      S_[nu] = 0;
      q_push(nu);
    } else if (S_[v] == 0) {
      int lca = get_lca(u, v);
      if (!lca) {
        augment(u, v);
        augment(v, u);
        return true;
      }
      add_blossom(u, lca, v);
    }
    return false;
  }

  bool phase() {
    std::fill(S_.begin() + 1, S_.begin() + n_x_ + 1, -1);
    std::fill(slack_.begin() + 1, slack_.begin() + n_x_ + 1, 0);
    q_.clear();
    for (int x = 1; x <= n_x_; ++x)
      if (st_[x] == x && !match_[x]) {
        pa_[x] = 0;
        S_[x] = 0;
        q_push(x);
      }
    if (q_.empty()) return false;

    for (;;) {
      while (!q_.empty()) {
        int u = q_.front();
        q_.pop_front();
        if (S_[st_[u]] == 1) continue;
        for (int v = 1; v <= n_; ++v)
          if (g_[u][v].w > 0 && st_[u] != st_[v]) {
            if (e_delta(g_[u][v]) == 0) {
              if (on_found_edge(g_[u][v])) return true;
            } else {
              update_slack(u, st_[v]);
            }
          }
      }

      bool have_d = false;
      mpz_class d;
      auto lower_d = [&](mpz_class cand) {
        if (!have_d || cand < d) {
          d = std::move(cand);
          have_d = true;
        }
      };
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && S_[b] == 1) lower_d(lab_[b] / 2);
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x]) {
          if (S_[x] == -1)
            lower_d(e_delta(g_[slack_[x]][x]));
          else if (S_[x] == 0)
            lower_d(e_delta(g_[slack_[x]][x]) / 2);
        }
      if (!have_d) return false;

      for (int u = 1; u <= n_; ++u) {
        if (S_[st_[u]] == 0) {
          if (lab_[u] <= d) return false;
          lab_[u] -= d;
        } else if (S_[st_[u]] == 1) {
          lab_[u] += d;
        }
      }
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b) {
          if (S_[b] == 0)
            lab_[b] += d * 2;
          else if (S_[b] == 1)
            lab_[b] -= d * 2;
        }

      q_.clear();
      for (int x = 1; x <= n_x_; ++x)
        if (st_[x] == x && slack_[x] && st_[slack_[x]] != x && e_delta(g_[slack_[x]][x]) == 0)
          if (on_found_edge(g_[slack_[x]][x])) return true;
      for (int b = n_ + 1; b <= n_x_; ++b)
        if (st_[b] == b && S_[b] == 1 && lab_[b] == 0) expand_blossom(b);
    }
  }

  int n_;
  int n_x_ = 0;
  int timer_ = 0;
  std::vector<std::vector<Edge>> g_;
  std::vector<mpz_class> lab_;
  std::vector<int> match_, slack_, st_, pa_, S_, vis_;
  std::vector<std::vector<int>> flower_;
  std::vector<std::vector<int>> flower_from_;
  std::deque<int> q_;
};

}  // namespace

std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<mpz_class>>& cost) {
  std::size_t n = cost.size();
  if (n == 0 || n % 2 != 0)
    throw ContractError("min_weight_perfect_matching: vertex count must be even and positive");
  for (const auto& row : cost)
    if (row.size() != n) throw ContractError("min_weight_perfect_matching: cost matrix not square");

  // Maximize (M - cost) over perfect matchings; every perfect matching has
  // the same edge count, so the shift keeps the minimizer and makes all
  // weights strictly positive, forcing maximality on the complete graph.
  mpz_class max_cost(0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (cost[u][v] > max_cost) max_cost = cost[u][v];
  mpz_class shift = max_cost + 1;

  std::vector<std::vector<mpz_class>> weight(n, std::vector<mpz_class>(n, mpz_class(0)));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (u != v) weight[u][v] = shift - cost[u][v];

  WeightedBlossom solver(weight);
  std::vector<int> mate1 = solver.run();

  std::vector<int> mate(n, -1);
  for (std::size_t u = 0; u < n; ++u) {
    int m = mate1[u + 1];
    if (m == 0) throw ContractError("min_weight_perfect_matching: matching is not perfect");
    mate[u] = m - 1;
  }
  for (std::size_t u = 0; u < n; ++u)
    if (mate[static_cast<std::size_t>(mate[u])] != static_cast<int>(u))
      throw ContractError("min_weight_perfect_matching: inconsistent mates");
  return mate;
}

}  // namespace moca
