#include "sessile/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <unordered_map>

#include "sessile/errors.hpp"
#include "sessile/numerics.hpp"

namespace sessile {

namespace {

struct Pt {
  double x, y;
};

enum class VKind : unsigned char { Interior, Surface, Bottom, Symmetry, Corner, Apex, Origin, Super };

bool on_surface(VKind k) { return k == VKind::Surface || k == VKind::Corner || k == VKind::Apex; }
bool on_bottom(VKind k) { return k == VKind::Bottom || k == VKind::Corner || k == VKind::Origin; }
bool on_symmetry(VKind k) {
  return k == VKind::Symmetry || k == VKind::Apex || k == VKind::Origin;
}

double orient(const Pt& a, const Pt& b, const Pt& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// > 0 when d lies inside the circumcircle of the counterclockwise triangle abc.
double incircle(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const double adx = a.x - d.x, ady = a.y - d.y;
  const double bdx = b.x - d.x, bdy = b.y - d.y;
  const double cdx = c.x - d.x, cdy = c.y - d.y;
  const double ad = adx * adx + ady * ady, bd = bdx * bdx + bdy * bdy, cd = cdx * cdx + cdy * cdy;
  return adx * (bdy * cd - bd * cdy) - ady * (bdx * cd - bd * cdx) + ad * (bdx * cdy - bdy * cdx);
}

// Incremental Delaunay triangulation (Bowyer-Watson) inside a super triangle.
class Delaunay {
 public:
  struct Tri {
    int v[3];
    int nb[3];  // neighbor across the edge opposite v[k]
    bool alive;
    double cx, cy, r2;
  };

  std::vector<Pt> pts;
  std::vector<VKind> kind;
  std::vector<Tri> tris;

  explicit Delaunay(double span) {
    double s = 1e3 * span;
    add_point({-s, -s}, VKind::Super);
    add_point({s, -s}, VKind::Super);
    add_point({0.0, s}, VKind::Super);
    make_tri(0, 1, 2, -1, -1, -1);
  }

  int add_point(Pt p, VKind k) {
    pts.push_back(p);
    kind.push_back(k);
    return int(pts.size()) - 1;
  }

  bool is_super_tri(const Tri& t) const {
    return kind[t.v[0]] == VKind::Super || kind[t.v[1]] == VKind::Super ||
           kind[t.v[2]] == VKind::Super;
  }

  // Returns an alive triangle containing p (or -1).
  int locate(const Pt& p) const {
    int best = -1;
    double best_score = -1e300;
    for (int i = int(tris.size()) - 1; i >= 0; --i) {
      const Tri& t = tris[i];
      if (!t.alive) continue;
      const Pt &a = pts[t.v[0]], &b = pts[t.v[1]], &c = pts[t.v[2]];
      double area = orient(a, b, c);
      double s = std::min({orient(a, b, p), orient(b, c, p), orient(c, a, p)}) / area;
      if (s >= 0.0) return i;
      if (s > best_score) {
        best_score = s;
        best = i;
      }
    }
    return best_score > -1e-9 ? best : -1;
  }

  int insert(Pt p, VKind k) {
    int start = locate(p);
    if (start < 0) throw MeshError("mesh generation: point outside triangulation");
    int vid = add_point(p, k);
    std::vector<int> cavity;
    std::vector<char> in_cavity(tris.size(), 0);
    std::deque<int> queue{start};
    in_cavity[start] = 1;
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      cavity.push_back(t);
      for (int e = 0; e < 3; ++e) {
        int n = tris[t].nb[e];
        if (n < 0 || in_cavity[n]) continue;
        const Tri& tn = tris[n];
        if (incircle(pts[tn.v[0]], pts[tn.v[1]], pts[tn.v[2]], p) > 0.0) {
          in_cavity[n] = 1;
          queue.push_back(n);
        }
      }
    }
    struct Edge {
      int a, b, outside, outside_slot;
    };
    std::vector<Edge> boundary;
    for (int t : cavity) {
      for (int e = 0; e < 3; ++e) {
        int n = tris[t].nb[e];
        if (n >= 0 && in_cavity[n]) continue;
        int a = tris[t].v[(e + 1) % 3], b = tris[t].v[(e + 2) % 3];
        int slot = -1;
        if (n >= 0)
          for (int f = 0; f < 3; ++f)
            if (tris[n].nb[f] == t) slot = f;
        boundary.push_back({a, b, n, slot});
      }
    }
    for (int t : cavity) tris[t].alive = false;
    std::unordered_map<int, int> start_at, end_at;  // vertex -> new triangle
    std::vector<int> created;
    for (const auto& e : boundary) {
      if (orient(pts[e.a], pts[e.b], p) <= 0.0)
        throw MeshError("mesh generation: cavity is not star-shaped");
      int id = make_tri(e.a, e.b, vid, -1, -1, e.outside);
      if (e.outside >= 0) tris[e.outside].nb[e.outside_slot] = id;
      start_at[e.b] = id;  // edge (b, p) opposite a
      end_at[e.a] = id;    // edge (p, a) opposite b
      created.push_back(id);
    }
    for (int id : created) {
      Tri& t = tris[id];
      // edge opposite v[0] is (v1=b, p): neighbor owns edge (p, b)
      t.nb[0] = end_at.at(t.v[1]);
      // edge opposite v[1] is (p, v0=a): neighbor owns edge (a, p)
      t.nb[1] = start_at.at(t.v[0]);
    }
    return vid;
  }

  int make_tri(int a, int b, int c, int n0, int n1, int n2) {
    Tri t;
    t.v[0] = a;
    t.v[1] = b;
    t.v[2] = c;
    t.nb[0] = n0;
    t.nb[1] = n1;
    t.nb[2] = n2;
    t.alive = true;
    const Pt &A = pts[a], &B = pts[b], &C = pts[c];
    double d = 2.0 * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
    double a2 = A.x * A.x + A.y * A.y, b2 = B.x * B.x + B.y * B.y, c2 = C.x * C.x + C.y * C.y;
    t.cx = (a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d;
    t.cy = (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d;
    t.r2 = (A.x - t.cx) * (A.x - t.cx) + (A.y - t.cy) * (A.y - t.cy);
    tris.push_back(t);
    return int(tris.size()) - 1;
  }
};

struct Segment {
  int a, b;
  VKind kind;  // Surface, Bottom or Symmetry
  bool alive;
};

double min_angle(const Pt& a, const Pt& b, const Pt& c, int* at = nullptr) {
  auto ang = [](const Pt& p, const Pt& q, const Pt& r) {
    double ux = q.x - p.x, uy = q.y - p.y, vx = r.x - p.x, vy = r.y - p.y;
    return std::atan2(std::abs(ux * vy - uy * vx), ux * vx + uy * vy);
  };
  double A[3] = {ang(a, b, c), ang(b, c, a), ang(c, a, b)};
  int k = int(std::min_element(A, A + 3) - A);
  if (at) *at = k;
  return A[k];
}

}  // namespace

double graded_size(const Mesh& m, double dist) {
  const double kap = 1.0 / (1.0 - m.delta_grade);
  const double S = m.half_arclength;
  const double unit = S / (m.n_surface / 2);
  return kap * unit * std::min(1.0, std::pow(std::max(dist, 0.0) / S, m.delta_grade));
}

Mesh build_mesh(std::shared_ptr<const EquilibriumShape> shape, int n_surface, double delta_grade) {
  if (n_surface < 16 || n_surface % 2 != 0)
    throw MeshError("n_surface must be an even number >= 16");
  if (!(delta_grade >= 0.0 && delta_grade < 1.0))
    throw MeshError("delta_grade must lie in [0, 1)");
  const EquilibriumShape& sh = *shape;
  const double ell = sh.ell;
  Mesh mesh;
  mesh.shape = shape;
  mesh.n_surface = n_surface;
  mesh.delta_grade = delta_grade;

  // Arclength of the right half of the profile, measured from the apex.
  const int m = 2048;
  const auto& g4 = gauss01(4);
  std::vector<double> xs(m + 1), s(m + 1, 0.0);
  for (int k = 0; k <= m; ++k) xs[k] = ell * k / m;
  for (int k = 0; k < m; ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q < g4.x.size(); ++q) {
      double d = sh.eval(xs[k] + (xs[k + 1] - xs[k]) * g4.x[q]).dz;
      acc += g4.w[q] * std::sqrt(1.0 + d * d);
    }
    s[k + 1] = s[k] + acc * (xs[k + 1] - xs[k]);
  }
  const double S = s.back();
  mesh.half_arclength = S;
  auto x_of_s = [&](double target) {
    auto it = std::lower_bound(s.begin(), s.end(), target);
    int k = std::clamp(int(it - s.begin()), 1, m);
    double f = (target - s[k - 1]) / (s[k] - s[k - 1]);
    return xs[k - 1] + f * (xs[k] - xs[k - 1]);
  };

  const int nh = n_surface / 2;
  const double kap = 1.0 / (1.0 - delta_grade);
  const Pt corner{ell, 0.0};
  auto size_at = [&](const Pt& p) {
    double d = std::hypot(p.x - corner.x, p.y - corner.y);
    return graded_size(mesh, d);
  };

  const double span = std::max(ell, sh.apex);
  Delaunay dt(span);
  std::vector<Segment> segs;

  // Boundary points, each inserted once; segments link consecutive points.
  std::vector<int> surf_ids, bot_ids, sym_ids;
  // surface: from the apex (x1=0) to the corner
  for (int i = nh; i >= 0; --i) {
    double d = S * std::pow(double(i) / nh, kap);
    double x = (i == nh) ? 0.0 : (i == 0 ? ell : x_of_s(S - d));
    Pt p{x, i == 0 ? 0.0 : sh.zeta0(x)};
    VKind k = (i == nh) ? VKind::Apex : (i == 0 ? VKind::Corner : VKind::Surface);
    if (i == nh) p.y = sh.apex;
    surf_ids.push_back(dt.insert(p, k));
  }
  const int nb = std::max(2, int(std::lround(nh * std::pow(ell / S, 1.0 / kap))));
  bot_ids.push_back(surf_ids.back());  // corner
  for (int i = 1; i <= nb; ++i) {
    double x = (i == nb) ? 0.0 : ell - ell * std::pow(double(i) / nb, kap);
    VKind k = (i == nb) ? VKind::Origin : VKind::Bottom;
    bot_ids.push_back(dt.insert({x, 0.0}, k));
  }
  {
    double hc = size_at({0.0, 0.5 * sh.apex});
    int ns = std::max(1, int(std::ceil(sh.apex / hc)));
    sym_ids.push_back(bot_ids.back());  // origin
    for (int i = 1; i < ns; ++i) sym_ids.push_back(dt.insert({0.0, sh.apex * i / ns}, VKind::Symmetry));
    sym_ids.push_back(surf_ids.front());  // apex
  }
  for (std::size_t i = 0; i + 1 < surf_ids.size(); ++i)
    segs.push_back({surf_ids[i], surf_ids[i + 1], VKind::Surface, true});
  for (std::size_t i = 0; i + 1 < bot_ids.size(); ++i)
    segs.push_back({bot_ids[i], bot_ids[i + 1], VKind::Bottom, true});
  for (std::size_t i = 0; i + 1 < sym_ids.size(); ++i)
    segs.push_back({sym_ids[i], sym_ids[i + 1], VKind::Symmetry, true});

  auto encroaches = [&](const Segment& sg, const Pt& p) {
    const Pt &a = dt.pts[sg.a], &b = dt.pts[sg.b];
    double dot = (a.x - p.x) * (b.x - p.x) + (a.y - p.y) * (b.y - p.y);
    double len2 = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
    return dot < -1e-10 * len2;
  };

  std::deque<int> split_queue;
  auto check_segment_against_all = [&](int si) {
    for (std::size_t v = 3; v < dt.pts.size(); ++v) {
      if (int(v) == segs[si].a || int(v) == segs[si].b) continue;
      if (encroaches(segs[si], dt.pts[v])) {
        split_queue.push_back(si);
        return;
      }
    }
  };
  auto check_point_against_segments = [&](const Pt& p, int self) {
    for (std::size_t si = 0; si < segs.size(); ++si) {
      if (!segs[si].alive || segs[si].a == self || segs[si].b == self) continue;
      if (encroaches(segs[si], p)) split_queue.push_back(int(si));
    }
  };

  const std::size_t max_vertices = 400000;
  auto split_segment = [&](int si) {
    if (!segs[si].alive) return;
    Segment sg = segs[si];
    const Pt &a = dt.pts[sg.a], &b = dt.pts[sg.b];
    Pt mid{0.5 * (a.x + b.x), 0.5 * (a.y + b.y)};
    VKind k = sg.kind;
    if (sg.kind == VKind::Surface) mid.y = sh.zeta0(mid.x);
    if (sg.kind == VKind::Bottom) mid.y = 0.0;
    if (sg.kind == VKind::Symmetry) mid.x = 0.0;
    segs[si].alive = false;
    int v = dt.insert(mid, k);
    segs.push_back({sg.a, v, sg.kind, true});
    segs.push_back({v, sg.b, sg.kind, true});
    int s1 = int(segs.size()) - 2, s2 = int(segs.size()) - 1;
    check_segment_against_all(s1);
    check_segment_against_all(s2);
    check_point_against_segments(mid, v);
  };
  auto drain = [&] {
    while (!split_queue.empty()) {
      int si = split_queue.front();
      split_queue.pop_front();
      split_segment(si);
      if (dt.pts.size() > max_vertices) throw MeshError("mesh generation did not terminate");
    }
  };

  for (std::size_t si = 0; si < segs.size(); ++si) check_segment_against_all(int(si));
  drain();

  const double min_angle_target = 22.0 * M_PI / 180.0;
  const int corner_id = surf_ids.back();
  while (true) {
    int bad = -1;
    for (std::size_t ti = 0; ti < dt.tris.size(); ++ti) {
      const auto& t = dt.tris[ti];
      if (!t.alive || dt.is_super_tri(t)) continue;
      const Pt &a = dt.pts[t.v[0]], &b = dt.pts[t.v[1]], &c = dt.pts[t.v[2]];
      Pt cen{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
      double R = std::sqrt(t.r2);
      bool too_big = R > 1.1 * size_at(cen) / std::sqrt(3.0);
      int at = -1;
      double ang = min_angle(a, b, c, &at);
      bool poor = ang < min_angle_target && t.v[at] != corner_id;
      // triangles with two surface edges cannot represent the curve
      int surf_edges = 0;
      for (int e = 0; e < 3; ++e)
        if (on_surface(dt.kind[t.v[e]]) && on_surface(dt.kind[t.v[(e + 1) % 3]])) ++surf_edges;
      if (too_big || poor || surf_edges >= 2) {
        bad = int(ti);
        break;
      }
    }
    if (bad < 0) break;
    const auto t = dt.tris[bad];
    Pt c{t.cx, t.cy};
    std::vector<int> enc;
    for (std::size_t si = 0; si < segs.size(); ++si)
      if (segs[si].alive && encroaches(segs[si], c)) enc.push_back(int(si));
    if (enc.empty()) {
      int loc = dt.locate(c);
      if (loc < 0 || dt.is_super_tri(dt.tris[loc]) || c.x < 0.0) {
        // outside the domain: split the longest boundary segment of the triangle
        int best = -1;
        double bl = -1.0;
        for (std::size_t si = 0; si < segs.size(); ++si) {
          if (!segs[si].alive) continue;
          int hits = 0;
          for (int e = 0; e < 3; ++e)
            if (t.v[e] == segs[si].a || t.v[e] == segs[si].b) ++hits;
          if (hits < 1) continue;
          const Pt &a = dt.pts[segs[si].a], &b = dt.pts[segs[si].b];
          double len = std::hypot(a.x - b.x, a.y - b.y);
          if (len > bl) {
            bl = len;
            best = int(si);
          }
        }
        if (best < 0) throw MeshError("mesh generation: refinement point outside the domain");
        split_queue.push_back(best);
      } else {
        int v = dt.insert(c, VKind::Interior);
        check_point_against_segments(c, v);
      }
    } else {
      for (int si : enc) split_queue.push_back(si);
    }
    drain();
    if (dt.pts.size() > max_vertices) throw MeshError("mesh generation did not terminate");
  }

  // Collect the half mesh and mirror it across x1 = 0.
  std::vector<int> vmap(dt.pts.size(), -1), mirror(dt.pts.size(), -1);
  std::vector<std::array<double, 2>> verts;
  std::vector<VKind> vkind;
  for (std::size_t v = 3; v < dt.pts.size(); ++v) {
    vmap[v] = int(verts.size());
    verts.push_back({dt.pts[v].x, dt.pts[v].y});
    vkind.push_back(dt.kind[v]);
  }
  const std::size_t nhalf = verts.size();
  for (std::size_t v = 3; v < dt.pts.size(); ++v) {
    if (on_symmetry(dt.kind[v])) {
      mirror[v] = vmap[v];
    } else {
      mirror[v] = int(verts.size());
      verts.push_back({-dt.pts[v].x, dt.pts[v].y});
      vkind.push_back(dt.kind[v]);
    }
  }
  (void)nhalf;
  std::vector<std::array<int, 3>> tris;
  for (const auto& t : dt.tris) {
    if (!t.alive || dt.is_super_tri(t)) continue;
    tris.push_back({vmap[t.v[0]], vmap[t.v[1]], vmap[t.v[2]]});
  }
  const std::size_t nt_half = tris.size();
  for (std::size_t i = 0; i < nt_half; ++i) {
    const auto& t = tris[i];
    // vmap index -> original id: verts[k] came from dt index k+3
    tris.push_back({mirror[t[0] + 3], mirror[t[2] + 3], mirror[t[1] + 3]});
  }

  // Boundary segments in the full mesh.
  auto edge_key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  std::map<std::pair<int, int>, BoundaryTag> bseg;
  for (const auto& sg : segs) {
    if (!sg.alive || sg.kind == VKind::Symmetry) continue;
    BoundaryTag bt = sg.kind == VKind::Surface ? BoundaryTag::Surface : BoundaryTag::Bottom;
    bseg[edge_key(vmap[sg.a], vmap[sg.b])] = bt;
    bseg[edge_key(mirror[sg.a], mirror[sg.b])] = bt;
  }

  mesh.n_vertices = int(verts.size());
  mesh.nodes = verts;
  mesh.tag.assign(verts.size(), NodeTag::Interior);
  for (std::size_t v = 0; v < verts.size(); ++v) {
    VKind k = vkind[v];
    if (k == VKind::Corner)
      mesh.tag[v] = verts[v][0] > 0 ? NodeTag::ContactRight : NodeTag::ContactLeft;
    else if (on_bottom(k))
      mesh.tag[v] = NodeTag::Bottom;
    else if (on_surface(k))
      mesh.tag[v] = NodeTag::Surface;
    if (k == VKind::Corner) {
      if (verts[v][0] > 0)
        mesh.corner_right = int(v);
      else
        mesh.corner_left = int(v);
    }
  }

  std::map<std::pair<int, int>, int> mid_of;
  std::map<std::pair<int, int>, int> edge_count;
  for (const auto& t : tris)
    for (int e = 0; e < 3; ++e) edge_count[edge_key(t[e], t[(e + 1) % 3])]++;
  for (const auto& [key, bt] : bseg)
    if (edge_count[key] != 1) throw MeshError("mesh generation: boundary segment missing");
  for (const auto& [key, cnt] : edge_count)
    if (cnt == 1 && !bseg.count(key)) throw MeshError("mesh generation: unexpected boundary edge");

  for (std::size_t ti = 0; ti < tris.size(); ++ti) {
    const auto& t = tris[ti];
    std::array<int, 6> tn{t[0], t[1], t[2], -1, -1, -1};
    int curved = -1;
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      auto key = edge_key(a, b);
      auto it = mid_of.find(key);
      int id;
      auto bt = bseg.find(key);
      if (it == mid_of.end()) {
        std::array<double, 2> mp{0.5 * (verts[a][0] + verts[b][0]), 0.5 * (verts[a][1] + verts[b][1])};
        NodeTag tg = NodeTag::Interior;
        if (bt != bseg.end()) {
          if (bt->second == BoundaryTag::Surface) {
            mp[1] = sh.zeta0(mp[0]);
            tg = NodeTag::Surface;
          } else {
            mp[1] = 0.0;
            tg = NodeTag::Bottom;
          }
        }
        id = int(mesh.nodes.size());
        mesh.nodes.push_back(mp);
        mesh.tag.push_back(tg);
        mid_of[key] = id;
      } else {
        id = it->second;
      }
      tn[3 + e] = id;
      if (bt != bseg.end()) {
        Mesh::BoundaryEdge be;
        be.tri = int(ti);
        be.local_edge = e;
        bool fwd = verts[a][0] < verts[b][0];
        be.n0 = fwd ? a : b;
        be.n1 = fwd ? b : a;
        be.nm = id;
        be.tag = bt->second;
        if (bt->second == BoundaryTag::Surface) {
          if (curved >= 0) throw MeshError("mesh generation: triangle with two surface edges");
          curved = e;
          mesh.surface_edges.push_back(be);
        } else {
          mesh.bottom_edges.push_back(be);
        }
      }
    }
    mesh.tri.push_back(tn);
    mesh.curved_edge.push_back(curved);
  }
  auto by_x = [&](const Mesh::BoundaryEdge& a, const Mesh::BoundaryEdge& b) {
    return mesh.nodes[a.n0][0] < mesh.nodes[b.n0][0];
  };
  std::sort(mesh.surface_edges.begin(), mesh.surface_edges.end(), by_x);
  std::sort(mesh.bottom_edges.begin(), mesh.bottom_edges.end(), by_x);

  for (const auto& t : mesh.tri) {
    const auto &a = mesh.nodes[t[0]], &b = mesh.nodes[t[1]], &c = mesh.nodes[t[2]];
    double ar = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
    if (!(ar > 0.0)) throw MeshError("mesh generation: inverted triangle");
  }
  return mesh;
}

std::vector<double> Mesh::surface_vertices_x1() const {
  std::vector<double> v;
  for (const auto& e : surface_edges) v.push_back(nodes[e.n0][0]);
  v.push_back(nodes[surface_edges.back().n1][0]);
  return v;
}

std::vector<int> Mesh::surface_nodes() const {
  std::vector<int> v;
  for (const auto& e : surface_edges) {
    v.push_back(e.n0);
    v.push_back(e.nm);
  }
  v.push_back(surface_edges.back().n1);
  return v;
}

MeshQuality mesh_quality(const Mesh& m) {
  MeshQuality q;
  q.min_angle_deg = 180.0;
  for (const auto& t : m.tri) {
    Pt a{m.nodes[t[0]][0], m.nodes[t[0]][1]}, b{m.nodes[t[1]][0], m.nodes[t[1]][1]},
        c{m.nodes[t[2]][0], m.nodes[t[2]][1]};
    q.min_angle_deg = std::min(q.min_angle_deg, min_angle(a, b, c) * 180.0 / M_PI);
  }
  const auto& sh = *m.shape;
  for (std::size_t i = 0; i < m.nodes.size(); ++i) {
    double off = 0.0;
    if (m.tag[i] == NodeTag::Surface) off = std::abs(m.nodes[i][1] - sh.zeta0(m.nodes[i][0]));
    if (m.tag[i] == NodeTag::Bottom || m.tag[i] == NodeTag::ContactLeft ||
        m.tag[i] == NodeTag::ContactRight)
      off = std::abs(m.nodes[i][1]);
    q.max_boundary_offset = std::max(q.max_boundary_offset, off);
  }
  // chord error of the polyline through all surface nodes
  auto nodes = m.surface_nodes();
  for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
    const auto &a = m.nodes[nodes[k]], &b = m.nodes[nodes[k + 1]];
    double dx = b[0] - a[0], dy = b[1] - a[1], len = std::hypot(dx, dy);
    for (int j = 1; j < 8; ++j) {
      double x = a[0] + dx * j / 8.0;
      double y = sh.zeta0(x);
      double dist = std::abs((x - a[0]) * dy - (y - a[1]) * dx) / len;
      q.chord_error = std::max(q.chord_error, dist);
    }
  }
  // grading audit on boundary edges near the corners
  q.grading_ratio_min = 1e300;
  q.grading_ratio_max = 0.0;
  const double ell = m.ell();
  auto audit = [&](const Mesh::BoundaryEdge& e) {
    const auto &a = m.nodes[e.n0], &b = m.nodes[e.n1];
    double da = std::min(std::hypot(a[0] - ell, a[1]), std::hypot(a[0] + ell, a[1]));
    double db = std::min(std::hypot(b[0] - ell, b[1]), std::hypot(b[0] + ell, b[1]));
    double far = std::max(da, db);
    if (far > 0.25 * m.half_arclength) return;
    double len = std::hypot(a[0] - b[0], a[1] - b[1]);
    double r = len / graded_size(m, far);
    q.grading_ratio_min = std::min(q.grading_ratio_min, r);
    q.grading_ratio_max = std::max(q.grading_ratio_max, r);
  };
  for (const auto& e : m.surface_edges) audit(e);
  for (const auto& e : m.bottom_edges) audit(e);
  return q;
}

}  // namespace sessile
