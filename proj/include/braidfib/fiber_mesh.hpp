#pragma once

// Level sets {arg g = phi} in C x S^1 as triangle meshes: marching tetrahedra on
// s = Im(e^{-i phi} g_t(u)) over a box that is periodic in t, clipped to
// r = Re(e^{-i phi} g_t(u)) >= 0. The clip line r = 0 is the braid itself.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "arg_analysis.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "poly_loop.hpp"

namespace braidfib {

struct FiberMesh {
  double phi = 0;
  double radius = 0;
  int nx = 0, ny = 0, nt = 0;
  std::vector<std::array<double, 3>> vertices;  // (Re u, Im u, t)
  std::vector<std::array<int, 3>> triangles;
  std::vector<std::vector<int>> braid_boundary;  // closed vertex loops
  std::vector<std::vector<int>> outer_wall;
  std::vector<bool> on_wall;  // per vertex: lies on a side face of the box
};

struct MeshTopology {
  int vertices = 0, edges = 0, faces = 0;
  int euler_raw = 0;     // V - E + F of the clipped surface
  int euler = 0;         // after capping every outer-wall loop with a disk
  int components = 0;
  int braid_loops = 0;
  int wall_loops = 0;
};

struct LevelSetOptions {
  int nx = 192, ny = 192, nt = 384;
  double radius = 0;     // 0 selects 2 (1 + max |roots|, |critical points|)
  double phi_tol = 1e-6;
  bool check_phi = true;
  int feature_cells = 2;
};

namespace detail {

using EdgeKey = std::uint64_t;

inline EdgeKey edge_key(std::uint64_t a, std::uint64_t b) {
  if (a > b) std::swap(a, b);
  return (a << 32) | b;
}

// Sorted (edge, incidence count) pairs of a triangle list.
inline std::vector<std::pair<EdgeKey, int>> edge_counts(const std::vector<std::array<int, 3>>& tris) {
  std::vector<EdgeKey> keys;
  keys.reserve(3 * tris.size());
  auto u = [](int v) { return static_cast<std::uint64_t>(v); };
  for (const auto& t : tris) {
    keys.push_back(edge_key(u(t[0]), u(t[1])));
    keys.push_back(edge_key(u(t[1]), u(t[2])));
    keys.push_back(edge_key(u(t[2]), u(t[0])));
  }
  std::sort(keys.begin(), keys.end());
  std::vector<std::pair<EdgeKey, int>> out;
  for (std::size_t a = 0; a < keys.size();) {
    std::size_t b = a;
    while (b < keys.size() && keys[b] == keys[a]) ++b;
    out.emplace_back(keys[a], static_cast<int>(b - a));
    a = b;
  }
  return out;
}

// Chains the given undirected edges into closed loops (pinch vertices are
// resolved by taking the smallest unused continuation).
inline std::vector<std::vector<int>> chain_loops(const std::vector<std::pair<int, int>>& edges) {
  std::map<int, std::vector<int>> adj;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    adj[edges[e].first].push_back(static_cast<int>(e));
    adj[edges[e].second].push_back(static_cast<int>(e));
  }
  std::vector<bool> used(edges.size(), false);
  std::vector<std::vector<int>> loops;
  for (std::size_t e0 = 0; e0 < edges.size(); ++e0) {
    if (used[e0]) continue;
    std::vector<int> loop{edges[e0].first};
    int cur = edges[e0].second;
    used[e0] = true;
    while (cur != loop.front()) {
      loop.push_back(cur);
      int next = -1;
      for (int e : adj[cur])
        if (!used[e]) {
          next = e;
          break;
        }
      if (next < 0) break;
      used[next] = true;
      cur = edges[next].first == cur ? edges[next].second : edges[next].first;
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

}  // namespace detail

// V - E + F on the welded complex. Throws NonManifold if an edge has more than
// two incident triangles.
inline int euler_characteristic(const std::vector<std::array<int, 3>>& tris) {
  const auto ec = detail::edge_counts(tris);
  for (const auto& [k, c] : ec)
    if (c > 2) fail(ErrorKind::NonManifold, "mesh edge shared by more than two triangles");
  std::vector<int> verts;
  verts.reserve(3 * tris.size());
  for (const auto& t : tris) verts.insert(verts.end(), t.begin(), t.end());
  std::sort(verts.begin(), verts.end());
  const int V = static_cast<int>(std::unique(verts.begin(), verts.end()) - verts.begin());
  return V - static_cast<int>(ec.size()) + static_cast<int>(tris.size());
}

inline int euler_characteristic(const FiberMesh& m) { return euler_characteristic(m.triangles); }

inline int connected_components(const std::vector<std::array<int, 3>>& tris, int vertex_count) {
  std::vector<int> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> used(vertex_count, false);
  for (const auto& t : tris) {
    for (int v : t) used[v] = true;
    parent[find(t[0])] = find(t[1]);
    parent[find(t[1])] = find(t[2]);
  }
  int c = 0;
  for (int v = 0; v < vertex_count; ++v)
    if (used[v] && find(v) == v) ++c;
  return c;
}

inline MeshTopology topology(const FiberMesh& m) {
  MeshTopology tp;
  tp.faces = static_cast<int>(m.triangles.size());
  const auto ec = detail::edge_counts(m.triangles);
  for (const auto& [k, c] : ec)
    if (c > 2) fail(ErrorKind::NonManifold, "mesh edge shared by more than two triangles");
  std::vector<bool> used(m.vertices.size(), false);
  for (const auto& t : m.triangles)
    for (int v : t) used[v] = true;
  tp.edges = static_cast<int>(ec.size());
  tp.vertices = static_cast<int>(std::count(used.begin(), used.end(), true));
  tp.euler_raw = tp.vertices - tp.edges + tp.faces;
  tp.braid_loops = static_cast<int>(m.braid_boundary.size());
  tp.wall_loops = static_cast<int>(m.outer_wall.size());
  tp.euler = tp.euler_raw + tp.wall_loops;
  tp.components = connected_components(m.triangles, static_cast<int>(m.vertices.size()));
  return tp;
}

// Default clip radius: 2 (1 + max over a t-grid of |roots| and |critical points|).
inline double auto_radius(const PolyLoop& g, int samples = 256) {
  double mx = 0;
  for (int k = 0; k < samples; ++k) {
    const double t = kTwoPi * k / samples;
    const auto a = g.coeffs_at(t);
    for (const auto& z : find_roots(a).roots) mx = std::max(mx, std::abs(z));
    if (g.degree() >= 2)
      for (const auto& z : find_roots(poly_derivative(a)).roots) mx = std::max(mx, std::abs(z));
  }
  return 2.0 * (1.0 + mx);
}

inline FiberMesh level_set(const PolyLoop& g, double phi, const LevelSetOptions& opt = {},
                           const std::vector<double>* critical_args = nullptr) {
  require(opt.nx >= 2 && opt.ny >= 2 && opt.nt >= 3, ErrorKind::InvalidInput, "mesh grid too small");
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0) phi += kTwoPi;
  if (opt.check_phi) {
    std::vector<double> crit;
    if (critical_args) crit = *critical_args;
    else if (g.degree() >= 2)
      for (const auto& p : arg_critical_points(critical_data(g, 2048))) crit.push_back(p.critical_arg);
    for (double a : crit) {
      double d = std::fmod(std::abs(a - phi), kTwoPi);
      d = std::min(d, kTwoPi - d);
      if (d < opt.phi_tol) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "phi=%.9f is a critical argument (%.9f); choose a regular value", phi, a);
        fail(ErrorKind::CriticalPhi, buf);
      }
    }
  }
  const double R = opt.radius > 0 ? opt.radius : auto_radius(g);
  const int NX = opt.nx, NY = opt.ny, NT = opt.nt;
  const double hx = 2 * R / NX, hy = 2 * R / NY, ht = kTwoPi / NT;
  {
    // Feature-size check against the strand separation.
    double sep = std::numeric_limits<double>::infinity();
    if (g.degree() >= 2) {
      const auto sb = track(g, Target::Roots, std::max(NT, 64));
      sep = sb.min_separation;
    }
    if (sep < opt.feature_cells * std::max(hx, hy)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "strand separation %.4g is below %d cells of %.4g", sep,
                    opt.feature_cells, std::max(hx, hy));
      fail(ErrorKind::GridTooCoarse, buf);
    }
  }
  const cd rot = std::polar(1.0, -phi);
  const std::uint64_t PX = NX + 1, PY = NY + 1;
  auto node_id = [&](int i, int j, int k) -> std::uint64_t {
    return (static_cast<std::uint64_t>(((k % NT) + NT) % NT) * PY + j) * PX + i;
  };
  auto node_pos = [&](std::uint64_t id) {
    const int i = static_cast<int>(id % PX);
    const int j = static_cast<int>((id / PX) % PY);
    const int k = static_cast<int>(id / (PX * PY));
    return std::array<double, 3>{-R + hx * i, -R + hy * j, ht * k};
  };
  auto slice_values = [&](int k) {
    const auto a = g.coeffs_at(ht * ((k % NT + NT) % NT));
    std::vector<double> s(PX * PY);
    for (std::uint64_t j = 0; j < PY; ++j)
      for (std::uint64_t i = 0; i < PX; ++i)
        s[j * PX + i] = std::imag(rot * poly_eval(a, cd(-R + hx * i, -R + hy * j)));
    return s;
  };

  // Kuhn split: tet p walks (0,0,0) -> (1,1,1) adding axes in the order perms[p].
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  struct SlabOut {
    std::vector<std::array<detail::EdgeKey, 3>> tris;
    std::vector<std::pair<detail::EdgeKey, std::array<double, 3>>> verts;
  };
  std::vector<SlabOut> slabs(NT);
  parallel_for(NT, [&](std::size_t kk) {
    const int k = static_cast<int>(kk);
    const auto s0 = slice_values(k), s1 = slice_values(k + 1);
    SlabOut& out = slabs[k];
    auto val = [&](int i, int j, int dk) { return (dk ? s1 : s0)[j * PX + i]; };
    auto vertex_on = [&](std::uint64_t a, double sa, std::uint64_t b, double sb, int ka, int kb) {
      const detail::EdgeKey key = detail::edge_key(a, b);
      {
        auto pa = node_pos(a), pb = node_pos(b);
        // unwrap t across the periodic seam
        pa[2] = ht * (k + ka);
        pb[2] = ht * (k + kb);
        const double w = sa / (sa - sb);
        std::array<double, 3> p{pa[0] + w * (pb[0] - pa[0]), pa[1] + w * (pb[1] - pa[1]), pa[2] + w * (pb[2] - pa[2])};
        if (ka == 1 && kb == 1 && k + 1 == NT) p[2] = 0;  // same value slab 0 computes
        else if (p[2] >= kTwoPi) p[2] -= kTwoPi;
        out.verts.emplace_back(key, p);
      }
      return key;
    };
    for (int j = 0; j < NY; ++j)
      for (int i = 0; i < NX; ++i) {
        double cv[8];
        bool anypos = false, anyneg = false;
        for (int c = 0; c < 8; ++c) {
          cv[c] = val(i + (c & 1), j + ((c >> 1) & 1), (c >> 2) & 1);
          (cv[c] >= 0 ? anypos : anyneg) = true;
        }
        if (!anypos || !anyneg) continue;
        for (const auto& pm : perms) {
          int corner[4];
          corner[0] = 0;
          for (int q = 0; q < 3; ++q) corner[q + 1] = corner[q] | (1 << pm[q]);
          std::uint64_t id[4];
          double sv[4];
          int kt[4];
          int npos = 0;
          for (int q = 0; q < 4; ++q) {
            const int c = corner[q];
            kt[q] = (c >> 2) & 1;
            id[q] = node_id(i + (c & 1), j + ((c >> 1) & 1), k + kt[q]);
            sv[q] = cv[c];
            npos += sv[q] >= 0;
          }
          if (npos == 0 || npos == 4) continue;
          auto V = [&](int a, int b) {
            // a positive, b negative
            return vertex_on(id[a], sv[a], id[b], sv[b], kt[a], kt[b]);
          };
          int P[4], Nn[4], np = 0, nn = 0;
          for (int q = 0; q < 4; ++q) (sv[q] >= 0 ? P[np++] : Nn[nn++]) = q;
          if (npos == 1) out.tris.push_back({V(P[0], Nn[0]), V(P[0], Nn[1]), V(P[0], Nn[2])});
          else if (npos == 3) out.tris.push_back({V(P[0], Nn[0]), V(P[1], Nn[0]), V(P[2], Nn[0])});
          else {
            const auto ac = V(P[0], Nn[0]), ad = V(P[0], Nn[1]), bd = V(P[1], Nn[1]), bc = V(P[1], Nn[0]);
            out.tris.push_back({ac, ad, bd});
            out.tris.push_back({ac, bd, bc});
          }
        }
      }
    std::stable_sort(out.verts.begin(), out.verts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    out.verts.erase(std::unique(out.verts.begin(), out.verts.end(),
                                [](const auto& x, const auto& y) { return x.first == y.first; }),
                    out.verts.end());
  });

  // Vertex ids follow the sorted edge keys, so the result does not depend on scheduling.
  std::vector<std::pair<detail::EdgeKey, std::array<double, 3>>> all;
  for (auto& sl : slabs) {
    all.insert(all.end(), sl.verts.begin(), sl.verts.end());
    sl.verts = {};
  }
  std::stable_sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  all.erase(std::unique(all.begin(), all.end(), [](const auto& x, const auto& y) { return x.first == y.first; }),
            all.end());
  std::vector<detail::EdgeKey> keys(all.size());
  std::vector<std::array<double, 3>> V(all.size());
  for (std::size_t q = 0; q < all.size(); ++q) keys[q] = all[q].first, V[q] = all[q].second;
  all = {};
  auto is_wall_node = [&](std::uint64_t id) {
    const std::uint64_t i = id % PX, j = (id / PX) % PY;
    return std::array<bool, 4>{i == 0, i == PX - 1, j == 0, j == PY - 1};
  };
  std::vector<std::array<bool, 4>> wall_faces(keys.size());
  for (std::size_t q = 0; q < keys.size(); ++q) {
    const auto fa = is_wall_node(keys[q] >> 32), fb = is_wall_node(keys[q] & 0xffffffffULL);
    wall_faces[q] = {fa[0] && fb[0], fa[1] && fb[1], fa[2] && fb[2], fa[3] && fb[3]};
  }
  auto vid = [&](detail::EdgeKey key) {
    return static_cast<int>(std::lower_bound(keys.begin(), keys.end(), key) - keys.begin());
  };
  std::vector<std::array<int, 3>> T;
  for (auto& sl : slabs)
    for (auto& t : sl.tris) T.push_back({vid(t[0]), vid(t[1]), vid(t[2])});
  slabs.clear();

  // Exact r at every vertex, then clip to r >= 0.
  std::vector<double> r(V.size());
  parallel_for(V.size(), [&](std::size_t v) {
    r[v] = std::real(rot * g.eval(cd(V[v][0], V[v][1]), V[v][2]));
  });
  FiberMesh mesh;
  mesh.phi = phi;
  mesh.radius = R;
  mesh.nx = NX, mesh.ny = NY, mesh.nt = NT;
  std::vector<int> newid(V.size(), -1);
  auto keep = [&](int v) {
    if (newid[v] < 0) {
      newid[v] = static_cast<int>(mesh.vertices.size());
      mesh.vertices.push_back(V[v]);
      mesh.on_wall.push_back(wall_faces[v][0] || wall_faces[v][1] || wall_faces[v][2] || wall_faces[v][3]);
    }
    return newid[v];
  };
  std::unordered_map<detail::EdgeKey, int> clipv;
  auto cut = [&](int a, int b) {
    // a has r >= 0, b has r < 0
    const auto key = detail::edge_key(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b));
    auto it = clipv.find(key);
    if (it != clipv.end()) return it->second;
    const double w = r[a] / (r[a] - r[b]);
    std::array<double, 3> pa = V[a], pb = V[b];
    if (pb[2] - pa[2] > kPi) pb[2] -= kTwoPi;
    if (pa[2] - pb[2] > kPi) pb[2] += kTwoPi;
    std::array<double, 3> p{pa[0] + w * (pb[0] - pa[0]), pa[1] + w * (pb[1] - pa[1]), pa[2] + w * (pb[2] - pa[2])};
    if (p[2] < 0) p[2] += kTwoPi;
    if (p[2] >= kTwoPi) p[2] -= kTwoPi;
    const int id = static_cast<int>(mesh.vertices.size());
    mesh.vertices.push_back(p);
    mesh.on_wall.push_back(false);
    clipv.emplace(key, id);
    return id;
  };
  for (const auto& t : T) {
    int P[3], Nn[3], np = 0, nn = 0;
    for (int q = 0; q < 3; ++q) (r[t[q]] >= 0 ? P[np++] : Nn[nn++]) = t[q];
    if (np == 0) continue;
    if (np == 3) {
      mesh.triangles.push_back({keep(t[0]), keep(t[1]), keep(t[2])});
      continue;
    }
    // keep cyclic orientation: rotate so the lone vertex comes first
    int q0 = 0;
    for (int q = 0; q < 3; ++q)
      if ((np == 1) == (r[t[q]] >= 0)) q0 = q;
    const int a = t[q0], b = t[(q0 + 1) % 3], c = t[(q0 + 2) % 3];
    if (np == 1) {
      mesh.triangles.push_back({keep(a), cut(a, b), cut(a, c)});
    } else {
      // a negative, b and c positive
      const int ab = cut(b, a), ac = cut(c, a);
      mesh.triangles.push_back({ab, keep(b), keep(c)});
      mesh.triangles.push_back({ab, keep(c), ac});
    }
  }

  // Boundary loops by class.
  std::vector<std::pair<int, int>> wall_edges, braid_edges;
  for (const auto& [key, c] : detail::edge_counts(mesh.triangles)) {
    if (c > 2) fail(ErrorKind::NonManifold, "level set mesh is not a manifold");
    if (c != 1) continue;
    const int a = static_cast<int>(key >> 32), b = static_cast<int>(key & 0xffffffffULL);
    (mesh.on_wall[a] && mesh.on_wall[b] ? wall_edges : braid_edges).emplace_back(a, b);
  }
  mesh.outer_wall = detail::chain_loops(wall_edges);
  mesh.braid_boundary = detail::chain_loops(braid_edges);
  return mesh;
}

struct SweepEntry {
  double phi = 0;
  MeshTopology topo;
};

struct SweepChange {
  double phi_from = 0, phi_to = 0;
  int delta = 0;                      // change of the capped Euler characteristic
  std::vector<double> critical_args;  // critical arguments inside (phi_from, phi_to)
};

struct SweepReport {
  std::vector<SweepEntry> entries;
  std::vector<SweepChange> changes;
  std::vector<double> critical_args;
};

// visit, when given, sees every mesh before it is discarded.
inline SweepReport sweep_report(const PolyLoop& g, const std::vector<double>& phis, const LevelSetOptions& opt = {},
                                const std::vector<double>* critical_args = nullptr,
                                const std::function<void(std::size_t, const FiberMesh&)>& visit = {}) {
  SweepReport rep;
  if (critical_args) rep.critical_args = *critical_args;
  else if (g.degree() >= 2)
    for (const auto& p : arg_critical_points(critical_data(g, 2048))) rep.critical_args.push_back(p.critical_arg);
  std::sort(rep.critical_args.begin(), rep.critical_args.end());
  for (std::size_t q = 0; q < phis.size(); ++q) {
    const auto m = level_set(g, phis[q], opt, &rep.critical_args);
    if (visit) visit(q, m);
    rep.entries.push_back({m.phi, topology(m)});
  }
  const std::size_t K = rep.entries.size();
  for (std::size_t q = 0; q < K && K > 1; ++q) {
    const auto& a = rep.entries[q];
    const auto& b = rep.entries[(q + 1) % K];
    if (q + 1 == K && K == 2) break;
    double lo = a.phi, hi = b.phi;
    if (hi <= lo) hi += kTwoPi;
    SweepChange ch{a.phi, b.phi, b.topo.euler - a.topo.euler, {}};
    for (double c : rep.critical_args)
      for (double cc : {c, c + kTwoPi})
        if (cc > lo && cc < hi) ch.critical_args.push_back(c);
    if (ch.delta != 0 || !ch.critical_args.empty()) rep.changes.push_back(ch);
  }
  return rep;
}

// Three interior values in every gap between consecutive critical arguments
// (the whole circle when there are none).
inline std::vector<double> regular_phis(std::vector<double> crit, int per_gap = 3) {
  std::sort(crit.begin(), crit.end());
  std::vector<double> out;
  if (crit.empty()) {
    for (int q = 0; q < per_gap; ++q) out.push_back(kTwoPi * (q + 0.5) / per_gap);
    return out;
  }
  for (std::size_t k = 0; k < crit.size(); ++k) {
    const double a = crit[k], b = k + 1 < crit.size() ? crit[k + 1] : crit.front() + kTwoPi;
    for (int q = 1; q <= per_gap; ++q) {
      double p = a + (b - a) * q / (per_gap + 1);
      if (p >= kTwoPi) p -= kTwoPi;
      out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void write_obj(const FiberMesh& m, const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  require(f != nullptr, ErrorKind::InvalidInput, "cannot write " + path);
  std::fprintf(f, "# level set phi=%.17g radius=%.17g grid=%dx%dx%d\n", m.phi, m.radius, m.nx, m.ny, m.nt);
  for (const auto& v : m.vertices) std::fprintf(f, "v %.17g %.17g %.17g\n", v[0], v[1], v[2]);
  for (const auto& t : m.triangles) std::fprintf(f, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
  std::fclose(f);
}

inline void write_ply(const FiberMesh& m, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::InvalidInput, "cannot write " + path);
  f << "ply\nformat binary_little_endian 1.0\n"
    << "element vertex " << m.vertices.size() << "\nproperty double x\nproperty double y\nproperty double z\n"
    << "element face " << m.triangles.size() << "\nproperty list uchar int vertex_indices\nend_header\n";
  for (const auto& v : m.vertices) f.write(reinterpret_cast<const char*>(v.data()), 3 * sizeof(double));
  for (const auto& t : m.triangles) {
    const unsigned char three = 3;
    f.write(reinterpret_cast<const char*>(&three), 1);
    f.write(reinterpret_cast<const char*>(t.data()), 3 * sizeof(int));
  }
}

}  // namespace braidfib
