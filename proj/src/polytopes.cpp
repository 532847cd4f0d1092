#include "conekit/polytopes.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "conekit/linalg.hpp"
#include "conekit/parallel.hpp"

namespace conekit {

ZeroOnePolytope make_zero_one_polytope(int dim, std::vector<RatVec> vertices) {
  if (dim < 1) throw std::invalid_argument("ZeroOnePolytope: dim must be positive");
  if (vertices.empty()) throw std::invalid_argument("ZeroOnePolytope: vertex list empty");
  for (const auto& v : vertices) {
    if (static_cast<int>(v.size()) != dim)
      throw std::invalid_argument("ZeroOnePolytope: vertex length mismatch");
    for (const auto& x : v)
      if (x != 0 && x != 1)
        throw std::invalid_argument("ZeroOnePolytope: coordinates must be 0/1");
  }
  auto sorted = vertices;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("ZeroOnePolytope: vertices must be pairwise distinct");
  return {dim, std::move(vertices)};
}

ZeroOnePolytope correlation_polytope(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("correlation_polytope: need 1 <= n <= 5");
  const auto coords = sym_coords(n);
  const int d = static_cast<int>(coords.size());
  std::vector<RatVec> verts;
  verts.reserve(size_t{1} << n);
  for (unsigned idx = 0; idx < (1u << n); ++idx) {
    RatVec z(d, Rat(0));
    for (int c = 0; c < d; ++c) {
      auto [i, j] = coords[c];
      int ai = (idx >> i) & 1u;
      int aj = (idx >> j) & 1u;
      z[c] = ai * aj;
    }
    verts.push_back(std::move(z));
  }
  return make_zero_one_polytope(d, std::move(verts));
}

namespace {

Rat dot(const RatVec& a, const RatVec& b) {
  Rat s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

struct Ray {
  RatVec y;            // length d+1, primitive, sign meaningful
  std::uint64_t tight; // bit i set <=> exactly on constraint i
};

}  // namespace

HRep facet_enum(const ZeroOnePolytope& p) {
  const int d = p.dim;
  const int nv = static_cast<int>(p.vertices.size());
  if (d > 8) throw std::invalid_argument("facet_enum: dim exceeds the desk-scale cap (8)");
  if (nv > 64) throw std::invalid_argument("facet_enum: more than 64 vertices");

  // Homogenized constraints h = (1, v), inserted in lexicographic vertex
  // order so the run is deterministic regardless of input order.
  std::vector<RatVec> sorted_verts = p.vertices;
  std::sort(sorted_verts.begin(), sorted_verts.end());
  std::vector<RatVec> cons;
  cons.reserve(sorted_verts.size());
  for (const auto& v : sorted_verts) {
    RatVec h(d + 1, Rat(0));
    h[0] = 1;
    for (int i = 0; i < d; ++i) h[i + 1] = v[i];
    cons.push_back(std::move(h));
  }

  // Double description of the dual cone {y : <y, h> >= 0 for all h}:
  // lineality basis + extreme rays, one constraint at a time.
  std::vector<RatVec> lin;
  for (int i = 0; i <= d; ++i) {
    RatVec e(d + 1, Rat(0));
    e[i] = 1;
    lin.push_back(std::move(e));
  }
  std::vector<Ray> rays;

  for (size_t j = 0; j < cons.size(); ++j) {
    const RatVec& h = cons[j];

    int pivot = -1;
    for (size_t i = 0; i < lin.size(); ++i)
      if (dot(h, lin[i]) != 0) {
        pivot = static_cast<int>(i);
        break;
      }

    if (pivot >= 0) {
      // The lineality sticks out of the hyperplane: slice it. The pivot
      // basis vector (oriented to the feasible side) becomes a ray; the
      // rest of the basis and all rays are shifted into the hyperplane.
      RatVec l0 = lin[pivot];
      Rat hl0 = dot(h, l0);
      if (hl0 < 0) {
        for (auto& x : l0) x = -x;
        hl0 = -hl0;
      }
      std::vector<RatVec> new_lin;
      for (size_t i = 0; i < lin.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        Rat c = dot(h, lin[i]) / hl0;
        RatVec l = lin[i];
        for (int t = 0; t <= d; ++t) l[t] -= c * l0[t];
        new_lin.push_back(primitive(l, true));
      }
      lin = std::move(new_lin);
      for (auto& r : rays) {
        Rat c = dot(h, r.y) / hl0;
        for (int t = 0; t <= d; ++t) r.y[t] -= c * l0[t];
        r.y = primitive(r.y, false);
        r.tight |= (std::uint64_t{1} << j);
      }
      Ray nr;
      nr.y = primitive(l0, false);
      nr.tight = (j == 0) ? 0 : ((std::uint64_t{1} << j) - 1);
      rays.push_back(std::move(nr));
      continue;
    }

    // Lineality lies in the hyperplane: split the rays by sign.
    std::vector<Rat> val(rays.size());
    std::vector<size_t> plus, minus;
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(h, rays[i].y);
      if (val[i] > 0)
        plus.push_back(i);
      else if (val[i] < 0)
        minus.push_back(i);
      else
        rays[i].tight |= (std::uint64_t{1} << j);
    }
    if (minus.empty()) continue;

    std::vector<Ray> created;
    for (size_t pi : plus) {
      for (size_t qi : minus) {
        // Combinatorial adjacency: no third extreme ray is tight on every
        // constraint both p and q are tight on.
        std::uint64_t common = rays[pi].tight & rays[qi].tight;
        bool adjacent = true;
        for (size_t r = 0; r < rays.size(); ++r) {
          if (r == pi || r == qi) continue;
          if ((rays[r].tight & common) == common) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        RatVec w(d + 1);
        for (int t = 0; t <= d; ++t)
          w[t] = val[pi] * rays[qi].y[t] - val[qi] * rays[pi].y[t];
        w = primitive(w, false);
        bool dup = false;
        for (const auto& c : created)
          if (c.y == w) {
            dup = true;
            break;
          }
        if (dup) continue;
        Ray nr;
        nr.y = std::move(w);
        nr.tight = 0;
        for (size_t i = 0; i <= j; ++i)
          if (dot(cons[i], nr.y) == 0) nr.tight |= (std::uint64_t{1} << i);
        created.push_back(std::move(nr));
      }
    }

    std::vector<Ray> kept;
    for (size_t i = 0; i < rays.size(); ++i)
      if (val[i] >= 0) kept.push_back(std::move(rays[i]));
    for (auto& nr : created) kept.push_back(std::move(nr));
    rays = std::move(kept);
  }

  // Affine-hull equalities a.x = c from the lineality: y = (y0, a) pairs to
  // zero with every (1, v), so a.x = -y0 on the hull. Canonicalize by RREF.
  HRep out;
  if (!lin.empty()) {
    RatMat eq(static_cast<int>(lin.size()), d + 1);
    for (size_t i = 0; i < lin.size(); ++i) {
      for (int t = 0; t < d; ++t) eq(static_cast<int>(i), t) = lin[i][t + 1];
      eq(static_cast<int>(i), d) = -lin[i][0];
    }
    rref(eq, d);
    out.eq_a = RatMat(static_cast<int>(lin.size()), d);
    out.eq_b = RatVec(lin.size());
    for (int i = 0; i < eq.rows(); ++i) {
      for (int t = 0; t < d; ++t) out.eq_a(i, t) = eq(i, t);
      out.eq_b[static_cast<size_t>(i)] = eq(i, d);
    }
  } else {
    out.eq_a = RatMat(0, d);
  }

  // Inequality rows a.x >= b, reduced modulo the equalities; a reduced row
  // with a = 0 is the trivial 1 >= 0 and is dropped.
  std::vector<RatVec> rows;
  for (const auto& r : rays) {
    RatVec row(d + 1);
    for (int t = 0; t < d; ++t) row[t] = r.y[t + 1];
    row[d] = -r.y[0];  // a.x >= b with b = -y0, keep b in the last slot
    for (int e = 0; e < out.eq_a.rows(); ++e) {
      int pc = -1;
      for (int t = 0; t < d; ++t)
        if (out.eq_a(e, t) != 0) {
          pc = t;
          break;
        }
      if (pc < 0 || row[pc] == 0) continue;
      Rat c = row[pc] / out.eq_a(e, pc);
      for (int t = 0; t < d; ++t) row[t] -= c * out.eq_a(e, t);
      row[d] -= c * out.eq_b[static_cast<size_t>(e)];  // b' = b - c*eq_b
    }
    int lead = -1;
    for (int t = 0; t < d; ++t)
      if (row[t] != 0) {
        lead = t;
        break;
      }
    if (lead < 0) continue;
    Rat scale = rat_abs(row[lead]);
    for (auto& x : row) x /= scale;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());

  out.a = RatMat(static_cast<int>(rows.size()), d);
  out.b = RatVec(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (int t = 0; t < d; ++t) out.a(static_cast<int>(i), t) = rows[i][t];
    out.b[i] = rows[i][d];
  }
  return out;
}

namespace {

RatMat slack_fill(const ZeroOnePolytope& p, const HRep& h, bool parallel) {
  const int nv = static_cast<int>(p.vertices.size());
  const int nf = h.a.rows();
  if (h.a.cols() != p.dim || h.eq_a.cols() != p.dim)
    throw std::invalid_argument("slack_matrix: H-representation dimension mismatch");

  for (int e = 0; e < h.eq_a.rows(); ++e)
    for (int v = 0; v < nv; ++v) {
      Rat s(0);
      for (int t = 0; t < p.dim; ++t) s += h.eq_a(e, t) * p.vertices[v][t];
      if (s != h.eq_b[static_cast<size_t>(e)])
        throw std::invalid_argument("slack_matrix: vertex violates an affine-hull equality");
    }

  RatMat s(nv, nf);
  bool bad = false;
#pragma omp parallel for schedule(static) if (parallel) reduction(|| : bad)
  for (int v = 0; v < nv; ++v) {
    for (int f = 0; f < nf; ++f) {
      Rat val = -h.b[static_cast<size_t>(f)];
      for (int t = 0; t < p.dim; ++t) val += h.a(f, t) * p.vertices[v][t];
      if (val < 0) bad = true;
      s(v, f) = std::move(val);
    }
  }
  if (bad)
    throw std::invalid_argument("slack_matrix: negative slack; H is not valid for P");
  return s;
}

}  // namespace

RatMat slack_matrix_serial(const ZeroOnePolytope& p, const HRep& h) {
  return slack_fill(p, h, false);
}

RatMat slack_matrix(const ZeroOnePolytope& p, const HRep& h) {
  return slack_fill(p, h, parallel_enabled() && p.vertices.size() >= 8);
}

FactorizationReport verify_cone_factorization(
    const RatMat& s, const std::vector<RatMat>& t, const std::vector<RatMat>& u,
    const ConeOracle& k, double tol,
    const std::vector<CpCertificate>* t_certs, const std::vector<CpCertificate>* u_certs) {
  if (static_cast<int>(t.size()) != s.rows() || static_cast<int>(u.size()) != s.cols())
    throw std::invalid_argument("verify_cone_factorization: factor counts must match S");
  if (t_certs && t_certs->size() != t.size())
    throw std::invalid_argument("verify_cone_factorization: T certificate count mismatch");
  if (u_certs && u_certs->size() != u.size())
    throw std::invalid_argument("verify_cone_factorization: U certificate count mismatch");

  FactorizationReport rep;
  rep.max_abs_err = 0;
  for (int v = 0; v < s.rows(); ++v)
    for (int f = 0; f < s.cols(); ++f) {
      Rat err = rat_abs(frobenius(t[static_cast<size_t>(v)], u[static_cast<size_t>(f)]) -
                        s(v, f));
      if (err > rep.max_abs_err) rep.max_abs_err = err;
    }
  rep.pairing_ok = rep.max_abs_err <= rat_from_double(tol);

  const ConeOracle ku = k.dual();
  auto check = [&](const RatMat& x, const ConeOracle& cone, const CpCertificate* cert,
                   const char* side, size_t idx) {
    auto c = contains(cone, x, tol, cert);
    if (c.status == Membership::NotMember) {
      ++rep.not_member;
      if (rep.note.empty())
        rep.note = std::string(side) + "[" + std::to_string(idx) + "] is not in the cone";
    } else if (c.status == Membership::Unknown) {
      ++rep.unknown;
      if (rep.note.empty())
        rep.note = std::string(side) + "[" + std::to_string(idx) + "] membership undecided" +
                   (c.note.empty() ? "" : (": " + c.note));
    }
  };
  for (size_t i = 0; i < t.size(); ++i)
    check(t[i], k, t_certs ? &(*t_certs)[i] : nullptr, "T", i);
  for (size_t i = 0; i < u.size(); ++i)
    check(u[i], ku, u_certs ? &(*u_certs)[i] : nullptr, "U", i);
  rep.membership_ok = rep.not_member == 0 && rep.unknown == 0;
  return rep;
}

TrivialFactorization trivial_orthant_factorization(const RatMat& s) {
  for (int i = 0; i < s.rows(); ++i)
    for (int j = 0; j < s.cols(); ++j)
      if (s(i, j) < 0)
        throw std::invalid_argument("trivial_orthant_factorization: S has a negative entry");
  TrivialFactorization f;
  f.cone = orthant_cone(s.cols());
  for (int v = 0; v < s.rows(); ++v) {
    RatMat tv(s.cols(), 1);
    for (int j = 0; j < s.cols(); ++j) tv(j, 0) = s(v, j);
    f.t.push_back(std::move(tv));
  }
  for (int j = 0; j < s.cols(); ++j) {
    RatMat uf(s.cols(), 1);
    uf(j, 0) = 1;
    f.u.push_back(std::move(uf));
  }
  return f;
}

}  // namespace conekit
