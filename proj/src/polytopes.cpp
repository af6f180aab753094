#include "sonreps/polytopes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace sonreps {

namespace {

void check_range(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) throw std::out_of_range(what);
}

// Rows <a,x> <= bound over all subsets I with |I| of the given parity:
// a_i = -1 for i in I, +1 otherwise. parity: 0 even, 1 odd, -1 all.
void append_sign_rows(HPolytope& p, int parity, double bound,
                      FacetFamily fam) {
  const int n = p.n;
  std::vector<Vector> rows;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (parity >= 0 &&
        std::popcount(static_cast<unsigned>(mask)) % 2 != parity)
      continue;
    Vector a(n);
    for (int i = 0; i < n; ++i) a[i] = (mask & (1 << i)) ? -1.0 : 1.0;
    rows.push_back(a);
  }
  int base = p.rows();
  Matrix na(base + rows.size(), n);
  Vector nb(base + rows.size());
  if (base > 0) {
    na.topRows(base) = p.a;
    nb.head(base) = p.b;
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    na.row(base + k) = rows[k].transpose();
    nb[base + k] = bound;
    p.family.push_back(fam);
  }
  p.a = na;
  p.b = nb;
}

void append_box_rows(HPolytope& p) {
  const int n = p.n;
  int base = p.rows();
  Matrix na(base + 2 * n, n);
  Vector nb(base + 2 * n);
  if (base > 0) {
    na.topRows(base) = p.a;
    nb.head(base) = p.b;
  }
  na.bottomRows(2 * n).setZero();
  for (int i = 0; i < n; ++i) {
    na(base + 2 * i, i) = 1.0;
    nb[base + 2 * i] = 1.0;
    na(base + 2 * i + 1, i) = -1.0;
    nb[base + 2 * i + 1] = 1.0;
    p.family.push_back(FacetFamily::Box);
    p.family.push_back(FacetFamily::Box);
  }
  p.a = na;
  p.b = nb;
}

void append_equality(HPolytope& p, const Vector& e) {
  int base = p.rows();
  Matrix na(base + 2, p.n);
  Vector nb(base + 2);
  na.topRows(base) = p.a;
  nb.head(base) = p.b;
  na.row(base) = e.transpose();
  na.row(base + 1) = -e.transpose();
  nb[base] = 0.0;
  nb[base + 1] = 0.0;
  p.family.push_back(FacetFamily::Equality);
  p.family.push_back(FacetFamily::Equality);
  p.a = na;
  p.b = nb;
}

HPolytope make(int n) {
  HPolytope p;
  p.n = n;
  p.a = Matrix(0, n);
  p.b = Vector(0);
  return p;
}

}  // namespace

HPolytope hypercube(int n) {
  check_range(n, 1, 30, "hypercube: n out of range");
  HPolytope p = make(n);
  append_box_rows(p);
  return p;
}

HPolytope cross_polytope(int n) {
  check_range(n, 1, 20, "cross_polytope: n out of range");
  HPolytope p = make(n);
  append_sign_rows(p, -1, 1.0, FacetFamily::AllSigns);
  return p;
}

HPolytope parity_polytope(int n) {
  check_range(n, 2, 20, "parity_polytope: n out of range");
  HPolytope p = make(n);
  if (n == 2) {
    // Segment conv{(1,1), (-1,-1)}: box plus the equality x_1 = x_2.
    append_box_rows(p);
    Vector e(2);
    e << 1.0, -1.0;
    append_equality(p, e);
    return p;
  }
  if (n == 3) {
    append_sign_rows(p, 1, 1.0, FacetFamily::OddSet);
    return p;
  }
  append_box_rows(p);
  append_sign_rows(p, 1, static_cast<double>(n - 2), FacetFamily::OddSet);
  return p;
}

HPolytope odd_parity_polytope(int n) {
  check_range(n, 2, 20, "odd_parity_polytope: n out of range");
  HPolytope p = make(n);
  if (n == 2) {
    append_box_rows(p);
    Vector e(2);
    e << 1.0, 1.0;
    append_equality(p, e);
    return p;
  }
  if (n == 3) {
    append_sign_rows(p, 0, 1.0, FacetFamily::EvenSet);
    return p;
  }
  append_box_rows(p);
  append_sign_rows(p, 0, static_cast<double>(n - 2), FacetFamily::EvenSet);
  return p;
}

HPolytope parity_polar(int n) {
  check_range(n, 2, 20, "parity_polar: n out of range");
  HPolytope p = make(n);
  append_sign_rows(p, 0, 1.0, FacetFamily::EvenSet);
  return p;
}

HPolytope odd_parity_polar(int n) {
  check_range(n, 2, 20, "odd_parity_polar: n out of range");
  HPolytope p = make(n);
  append_sign_rows(p, 1, 1.0, FacetFamily::OddSet);
  return p;
}

PolytopeMembership member(const HPolytope& p, const Vector& x, double tol) {
  if (x.size() != p.n)
    throw std::invalid_argument("member: dimension mismatch");
  PolytopeMembership r;
  r.worst_slack = std::numeric_limits<double>::infinity();
  r.violating_row = -1;
  for (int k = 0; k < p.rows(); ++k) {
    double s = p.b[k] - p.a.row(k).dot(x);
    if (s < r.worst_slack) {
      r.worst_slack = s;
      r.violating_row = k;
    }
  }
  if (r.worst_slack < -tol)
    r.verdict = Verdict::Outside;
  else if (r.worst_slack > tol)
    r.verdict = Verdict::Inside;
  else
    r.verdict = Verdict::Boundary;
  return r;
}

// Dense tableau simplex with Bland's rule. Free variables are split as
// x = u - v with u, v >= 0; requires b >= 0 so that the slack basis is
// feasible (true for every polytope built in this module).
LpResult simplex_maximize(const Matrix& a, const Vector& b, const Vector& c) {
  const int m = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const int nv = 2 * n + m;  // u, v, slacks
  for (int i = 0; i < m; ++i)
    if (b[i] < 0)
      throw std::invalid_argument("simplex_maximize: requires b >= 0");

  // Tableau: rows 0..m-1 constraints, row m objective (reduced costs).
  Matrix t = Matrix::Zero(m + 1, nv + 1);
  t.block(0, 0, m, n) = a;
  t.block(0, n, m, n) = -a;
  t.block(0, 2 * n, m, m) = Matrix::Identity(m, m);
  t.block(0, nv, m, 1) = b;
  t.block(m, 0, 1, n) = -c.transpose();
  t.block(m, n, 1, n) = c.transpose();

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * n + i;

  LpResult res;
  const double eps = 1e-10;
  for (int iter = 0; iter < 20000; ++iter) {
    int enter = -1;
    for (int j = 0; j < nv; ++j)
      if (t(m, j) < -eps) {
        enter = j;
        break;
      }
    if (enter < 0) break;  // optimal
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) > eps) {
        double ratio = t(i, nv) / t(i, enter);
        if (ratio < best - eps ||
            (ratio < best + eps && (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      res.unbounded = true;
      return res;
    }
    t.row(leave) /= t(leave, enter);
    for (int i = 0; i <= m; ++i) {
      if (i == leave) continue;
      double f = t(i, enter);
      if (f != 0.0) t.row(i) -= f * t.row(leave);
    }
    basis[leave] = enter;
  }

  Vector x = Vector::Zero(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n)
      x[basis[i]] += t(i, nv);
    else if (basis[i] < 2 * n)
      x[basis[i] - n] -= t(i, nv);
  }
  res.x = x;
  res.value = c.dot(x);
  return res;
}

int facet_count(const HPolytope& p, double tol) {
  if (p.n > 6)
    throw std::out_of_range("facet_count: LP-based method guarded to n <= 6");
  if (p.rows() == 0) throw std::invalid_argument("facet_count: empty system");
  int count = 0;
  const int m = p.rows();
  for (int k = 0; k < m; ++k) {
    Matrix rest(m - 1, p.n);
    Vector brest(m - 1);
    int r = 0;
    for (int l = 0; l < m; ++l) {
      if (l == k) continue;
      rest.row(r) = p.a.row(l);
      brest[r] = p.b[l];
      ++r;
    }
    LpResult lp = simplex_maximize(rest, brest, p.a.row(k).transpose());
    if (lp.unbounded || lp.value > p.b[k] + tol) ++count;
  }
  return count;
}

VPolytope vertices(PolytopeKind kind, int n) {
  check_range(n, 1, 16, "vertices: n out of range");
  VPolytope v;
  v.n = n;
  if (kind == PolytopeKind::CrossPolytope) {
    v.vertices = Matrix::Zero(2 * n, n);
    for (int i = 0; i < n; ++i) {
      v.vertices(2 * i, i) = 1.0;
      v.vertices(2 * i + 1, i) = -1.0;
    }
    return v;
  }
  int parity;
  switch (kind) {
    case PolytopeKind::Hypercube:
      parity = -1;
      break;
    case PolytopeKind::ParityPolytope:
      parity = 0;
      break;
    case PolytopeKind::OddParityPolytope:
      parity = 1;
      break;
    default:
      throw std::invalid_argument("vertices: kind has no sign-vector form");
  }
  std::vector<Vector> rows;
  for (int mask = 0; mask < (1 << n); ++mask) {
    if (parity >= 0 &&
        std::popcount(static_cast<unsigned>(mask)) % 2 != parity)
      continue;
    Vector x(n);
    for (int i = 0; i < n; ++i) x[i] = (mask & (1 << i)) ? -1.0 : 1.0;
    rows.push_back(x);
  }
  v.vertices = Matrix(rows.size(), n);
  for (std::size_t k = 0; k < rows.size(); ++k)
    v.vertices.row(k) = rows[k].transpose();
  return v;
}

bool ppalt_check(int n, const Vector& x, double tol) {
  if (n < 3) throw std::out_of_range("ppalt_check: requires n >= 3");
  auto inside = [&](const HPolytope& p, const Vector& y) {
    return member(p, y, tol).verdict != Verdict::Outside;
  };
  bool lhs = inside(hypercube(n), x) &&
             inside(odd_parity_polar(n), x / static_cast<double>(n - 2));
  bool rhs = inside(parity_polytope(n), x);
  if (lhs != rhs) return false;
  if (n == 3 && inside(odd_parity_polar(3), x) != rhs) return false;
  return true;
}

Vector project_parity_polytope(int n, const Vector& x) {
  if (n < 2 || x.size() != n)
    throw std::invalid_argument("project_parity_polytope: bad input");
  if (n == 2) {
    double t = std::clamp((x[0] + x[1]) / 2.0, -1.0, 1.0);
    return Vector::Constant(2, t);
  }
  Vector y = x.cwiseMax(-1.0).cwiseMin(1.0);

  // The only odd-set cut that can be active is the one matching the sign
  // pattern of y, with one flip to fix parity if needed.
  Vector a(n);
  for (int i = 0; i < n; ++i) a[i] = (y[i] < 0) ? -1.0 : 1.0;
  int neg = 0;
  for (int i = 0; i < n; ++i)
    if (a[i] < 0) ++neg;
  if (neg % 2 == 0) {
    int idx = 0;
    for (int i = 1; i < n; ++i)
      if (std::abs(y[i]) < std::abs(y[idx])) idx = i;
    a[idx] = -a[idx];
  }
  const double bound = static_cast<double>(n - 2);
  if (a.dot(y) <= bound) return y;

  // Project onto {p : |p_i| <= 1, <a,p> <= n-2} via bisection on the KKT
  // multiplier: p(t) = clip(x - t a), <a, p(t)> decreasing in t.
  auto val = [&](double t) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      s += a[i] * std::clamp(x[i] - t * a[i], -1.0, 1.0);
    return s;
  };
  double lo = 0.0, hi = x.cwiseAbs().maxCoeff() + n;
  for (int it = 0; it < 200 && val(hi) > bound; ++it) hi *= 2;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (val(mid) > bound)
      lo = mid;
    else
      hi = mid;
  }
  Vector p(n);
  for (int i = 0; i < n; ++i) p[i] = std::clamp(x[i] - hi * a[i], -1.0, 1.0);
  return p;
}

void HPolytope::dump_csv(std::ostream& os) const {
  static const char* names[] = {"box", "odd_set", "even_set", "all_signs",
                                "equality"};
  for (int k = 0; k < rows(); ++k) {
    for (int i = 0; i < n; ++i) os << a(k, i) << ",";
    os << b[k] << "," << names[static_cast<int>(family[k])] << "\n";
  }
}

}  // namespace sonreps
