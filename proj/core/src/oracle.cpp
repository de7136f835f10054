#include "mgraphon/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace mgraphon::oracle {

namespace {

// Upper-triangular key layout: key[0] = n, then z_ij for i <= j row-major.
std::size_t cell(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return 1 + i * n - i * (i - 1) / 2 + (j - i);
}

std::size_t key_n(const GraphKey& key) { return key.at(0); }

std::vector<Rational> degrees_of(const GraphKey& key) {
  const std::size_t n = key_n(key);
  std::vector<Rational> d(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::uint32_t z = key[cell(n, i, j)];
      d[i] += z;
      if (j != i) d[j] += z;
    }
  return d;
}

std::uint64_t half_edges_of(const GraphKey& key) {
  const std::size_t n = key_n(key);
  std::uint64_t L = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) L += (j == i ? 1 : 2) * static_cast<std::uint64_t>(key[cell(n, i, j)]);
  return L;
}

void add_pair(GraphKey& key, std::size_t i, std::size_t j) { key[cell(key_n(key), i, j)] += i == j ? 2 : 1; }
void drop_pair(GraphKey& key, std::size_t i, std::size_t j) { key[cell(key_n(key), i, j)] -= i == j ? 2 : 1; }

void accumulate(ExactLaw& law, GraphKey key, const Rational& mass, std::size_t cap) {
  auto [it, inserted] = law.try_emplace(std::move(key), Rational(0));
  it->second += mass;
  if (inserted && law.size() > cap) throw std::length_error("oracle: state cap exceeded");
}

// Adds one edge by the pair law to every atom of `from`.
void add_step(const GraphKey& key, const Rational& mass, const Rational& theta, ExactLaw& to, std::size_t cap) {
  const std::size_t n = key_n(key);
  const auto d = degrees_of(key);
  const Rational L(half_edges_of(key));
  const Rational den = (L + theta * n) * (L + theta * n + 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const Rational w = i == j ? (d[i] + theta) * (d[i] + theta + 1) : 2 * (d[i] + theta) * (d[j] + theta);
      GraphKey next = key;
      add_pair(next, i, j);
      accumulate(to, std::move(next), mass * w / den, cap);
    }
}

}  // namespace

Rational total_mass(const ExactLaw& law) {
  Rational t(0);
  for (const auto& kv : law) t += kv.second;
  return t;
}

std::vector<Multigraph> enumerate_graphs_by_degrees(const std::vector<std::uint64_t>& d, std::size_t cap) {
  const std::size_t n = d.size();
  std::vector<Multigraph> out;
  GraphKey key(1 + n * (n + 1) / 2, 0);
  key[0] = static_cast<std::uint32_t>(n);
  std::vector<std::uint64_t> left = d;
  // Fill cells (i, i), (i, i+1), ..., (i, n-1) row by row; row i must close
  // with zero remaining degree.
  auto rec = [&](auto&& self, std::size_t i, std::size_t j) -> void {
    if (i == n) {
      if (out.size() >= cap) throw std::length_error("enumerate_graphs_by_degrees: cap exceeded");
      out.push_back(Multigraph::from_canonical_key(key));
      return;
    }
    if (j == n) {
      if (left[i] == 0) self(self, i + 1, i + 1);
      return;
    }
    const std::size_t c = cell(n, i, j);
    if (i == j) {
      for (std::uint64_t loops = 0; 2 * loops <= left[i]; ++loops) {
        key[c] = static_cast<std::uint32_t>(2 * loops);
        left[i] -= 2 * loops;
        self(self, i, j + 1);
        left[i] += 2 * loops;
      }
    } else {
      for (std::uint64_t x = 0; x <= std::min(left[i], left[j]); ++x) {
        key[c] = static_cast<std::uint32_t>(x);
        left[i] -= x;
        left[j] -= x;
        self(self, i, j + 1);
        left[i] += x;
        left[j] += x;
      }
    }
    key[c] = 0;
  };
  rec(rec, 0, 0);
  return out;
}

std::vector<Multigraph> enumerate_graphs_by_edges(std::size_t n, std::uint64_t m, std::size_t cap) {
  std::vector<Multigraph> out;
  const std::size_t cells = n * (n + 1) / 2;
  if (cells == 0) {
    if (m == 0) out.emplace_back(n);
    return out;
  }
  GraphKey key(1 + cells, 0);
  key[0] = static_cast<std::uint32_t>(n);
  std::vector<std::pair<std::size_t, std::size_t>> order;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) order.emplace_back(i, j);
  // Compositions of m into the cells; a diagonal cell holds loops.
  auto rec = [&](auto&& self, std::size_t pos, std::uint64_t left) -> void {
    const auto [i, j] = order[pos];
    const std::size_t c = cell(n, i, j);
    const std::uint32_t unit = i == j ? 2 : 1;
    if (pos + 1 == cells) {
      key[c] = static_cast<std::uint32_t>(left) * unit;
      if (out.size() >= cap) throw std::length_error("enumerate_graphs_by_edges: cap exceeded");
      out.push_back(Multigraph::from_canonical_key(key));
      return;
    }
    for (std::uint64_t x = 0; x <= left; ++x) {
      key[c] = static_cast<std::uint32_t>(x) * unit;
      self(self, pos + 1, left - x);
    }
    key[c] = 0;
  };
  rec(rec, 0, m);
  return out;
}

ExactLaw exact_growth_law(std::size_t n, std::uint64_t m, const Rational& theta, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("exact_growth_law: n must be positive");
  GraphKey empty(1 + n * (n + 1) / 2, 0);
  empty[0] = static_cast<std::uint32_t>(n);
  ExactLaw law{{empty, Rational(1)}};
  for (std::uint64_t t = 0; t < m; ++t) {
    ExactLaw next;
    for (const auto& [key, mass] : law) add_step(key, mass, theta, next, cap);
    law = std::move(next);
  }
  return law;
}

ExactLaw exact_cm_law(const std::vector<std::uint64_t>& d, std::size_t cap) {
  std::vector<std::size_t> owner;
  for (std::size_t i = 0; i < d.size(); ++i) owner.insert(owner.end(), d[i], i);
  if (owner.size() % 2 != 0) throw std::invalid_argument("exact_cm_law: odd degree sum");
  const std::size_t n = d.size();
  GraphKey key(1 + n * (n + 1) / 2, 0);
  key[0] = static_cast<std::uint32_t>(n);
  std::vector<bool> matched(owner.size(), false);
  std::map<GraphKey, std::uint64_t> counts;
  std::uint64_t total = 0;
  auto rec = [&](auto&& self) -> void {
    const auto first = std::find(matched.begin(), matched.end(), false);
    if (first == matched.end()) {
      ++counts[key];
      if (++total > cap) throw std::length_error("exact_cm_law: cap exceeded");
      return;
    }
    const auto s = static_cast<std::size_t>(first - matched.begin());
    matched[s] = true;
    for (std::size_t t = s + 1; t < owner.size(); ++t) {
      if (matched[t]) continue;
      matched[t] = true;
      add_pair(key, owner[s], owner[t]);
      self(self);
      drop_pair(key, owner[s], owner[t]);
      matched[t] = false;
    }
    matched[s] = false;
  };
  rec(rec);
  ExactLaw law;
  for (const auto& [k, c] : counts) law.emplace(k, Rational(BigInt(c), BigInt(total)));
  return law;
}

ReconnectLaw exact_reconnect_law(const ReconnectOracleParams& params, std::uint64_t m, std::uint64_t L_cap,
                                 std::size_t state_cap) {
  const std::size_t n = params.n;
  const Rational n2(static_cast<long long>(n * n));
  const Rational threshold = params.a * n2 + 1;
  // L(0) = 2 floor(rho0 n^2 / 2)
  const Rational half = params.rho0 * n2 / 2;
  const BigInt half_floor = numerator(half) / denominator(half);
  const auto L0 = 2 * half_floor.convert_to<std::uint64_t>();
  if (L0 > L_cap) throw std::invalid_argument("exact_reconnect_law: L(0) exceeds L_cap");

  ReconnectLaw out;
  out.law = exact_growth_law(n, L0 / 2, params.theta, state_cap);
  const Rational p_move = 1 - params.p1 - params.p2;
  for (std::uint64_t t = 0; t < m; ++t) {
    ExactLaw next;
    for (const auto& [key, mass] : out.law) {
      const std::uint64_t L = half_edges_of(key);
      const bool above = Rational(L) > threshold;
      const Rational p_add = above ? params.p1 : params.p1 + params.p2;
      const Rational p_remove = above ? params.p2 : Rational(0);

      if (p_add != 0) {
        if (L + 2 > L_cap) {
          out.escaped += mass * p_add;
        } else {
          add_step(key, mass * p_add, params.theta, next, state_cap);
        }
      }
      if (p_remove != 0) {
        // Uniform entry of the edge list: weight x_ij (i < j) or loops_i.
        const Rational entries(L / 2);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i; j < n; ++j) {
            const std::uint32_t z = key[cell(n, i, j)];
            if (z == 0) continue;
            const Rational w(i == j ? z / 2 : z);
            GraphKey after = key;
            drop_pair(after, i, j);
            accumulate(next, std::move(after), mass * p_remove * w / entries, state_cap);
          }
      }
      if (p_move != 0) {
        if (L == 0) {
          accumulate(next, key, mass * p_move, state_cap);
          continue;
        }
        // Slot j at u, partner j' at v: weight z_uv / L over ordered (u, v).
        // j' goes to w with weight (d_w + theta) / (L + n theta).
        const auto d = degrees_of(key);
        const Rational den = Rational(L) * (Rational(L) + params.theta * n);
        for (std::size_t u = 0; u < n; ++u)
          for (std::size_t v = 0; v < n; ++v) {
            const std::uint32_t z = key[cell(n, u, v)];
            if (z == 0) continue;
            GraphKey detached = key;
            drop_pair(detached, u, v);
            for (std::size_t w = 0; w < n; ++w) {
              GraphKey after = detached;
              add_pair(after, u, w);
              accumulate(next, std::move(after), mass * p_move * Rational(z) * (d[w] + params.theta) / den,
                         state_cap);
            }
          }
      }
    }
    out.law = std::move(next);
  }
  return out;
}

ExactLaw conditional_slice(const ExactLaw& law, std::uint64_t L) {
  ExactLaw slice;
  Rational total(0);
  for (const auto& [key, mass] : law)
    if (half_edges_of(key) == L && mass != 0) {
      slice.emplace(key, mass);
      total += mass;
    }
  for (auto& kv : slice) kv.second /= total;
  return slice;
}

std::map<std::uint64_t, Rational> half_edge_marginal(const ExactLaw& law) {
  std::map<std::uint64_t, Rational> out;
  for (const auto& [key, mass] : law) {
    auto [it, inserted] = out.try_emplace(half_edges_of(key), Rational(0));
    it->second += mass;
  }
  return out;
}

Rational tv_distance(const ExactLaw& p, const ExactLaw& q) {
  Rational sum(0);
  for (const auto& [key, mp] : p) {
    const auto it = q.find(key);
    sum += abs(mp - (it == q.end() ? Rational(0) : it->second));
  }
  for (const auto& [key, mq] : q)
    if (!p.contains(key)) sum += abs(mq);
  return sum / 2;
}

double tv_distance(const std::map<GraphKey, std::size_t>& counts, const ExactLaw& q) {
  std::size_t total = 0;
  for (const auto& kv : counts) total += kv.second;
  const double N = static_cast<double>(total);
  double sum = 0.0;
  for (const auto& [key, c] : counts) {
    const auto it = q.find(key);
    const double pq = it == q.end() ? 0.0 : to_double(it->second);
    sum += std::abs(static_cast<double>(c) / N - pq);
  }
  for (const auto& [key, mq] : q)
    if (!counts.contains(key)) sum += to_double(mq);
  return sum / 2.0;
}

Rational naive_density(const Pattern& f, const Multigraph& g, DensityKind kind, std::uint64_t cap) {
  const std::size_t k = f.num_vertices();
  const std::size_t n = g.num_vertices();
  std::uint64_t space = 1;
  for (std::size_t t = 0; t < k; ++t) {
    space *= n;
    if (space > cap) throw std::length_error("naive_density: n^k exceeds cap");
  }
  // Adjacency rebuilt from the edge list.
  std::vector<std::uint32_t> z(n * n, 0);
  for (const EdgeEntry& e : g.edge_list()) {
    if (e.u == e.v) {
      z[e.u * n + e.u] += 2;
    } else {
      ++z[e.u * n + e.v];
      ++z[e.v * n + e.u];
    }
  }
  std::vector<std::size_t> sigma(k, 0);
  std::uint64_t hits = 0;
  std::uint64_t maps = 0;
  for (std::uint64_t code = 0; code < space; ++code) {
    std::uint64_t c = code;
    for (std::size_t t = 0; t < k; ++t) {
      sigma[t] = c % n;
      c /= n;
    }
    bool injective = true;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = s + 1; t < k; ++t)
        if (sigma[s] == sigma[t]) injective = false;
    if (kind != DensityKind::hom && !injective) continue;
    ++maps;
    bool ok = true;
    for (std::size_t s = 0; s < k; ++s)
      for (std::size_t t = s; t < k; ++t) {
        const std::uint32_t a = f.at(s, t);
        const std::uint32_t zz = z[sigma[s] * n + sigma[t]];
        if (kind == DensityKind::ind ? a != zz : a > zz) ok = false;
      }
    if (ok) ++hits;
  }
  if (maps == 0) return Rational(0);
  return Rational(BigInt(hits), BigInt(maps));
}

nlohmann::json to_json(const ExactLaw& law) {
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& [key, mass] : law) {
    atoms.push_back({{"key", key}, {"probability", mass.str()}});
  }
  return {{"atoms", atoms}, {"total", total_mass(law).str()}};
}

}  // namespace mgraphon::oracle
