#include "cfr/lattice.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>

namespace cfr {

namespace {
// Slack for the integer-norm-vs-radius comparison; norms are exact integers,
// radii are computed doubles.
constexpr double kRadiusSlack = 1e-9;
constexpr double kMinRadius = 9.0;
}  // namespace

double Ecv::norm_sq() const {
  double s = 0.0;
  for (const GaussInt& g : c) s += cfr::norm_sq(g);
  return s;
}

void Ecv::canonicalize() {
  for (GaussInt& g : c) {
    if (g.is_zero()) continue;
    // Unit u in {1, -1, i, -i} rotating the leading coefficient into the
    // first quadrant (re > 0, im >= 0).
    int u;  // number of times to multiply by i
    if (g.re > 0 && g.im >= 0) u = 0;
    else if (g.im > 0 && g.re <= 0) u = 3;  // times -i
    else if (g.re < 0 && g.im <= 0) u = 2;  // times -1
    else u = 1;                             // times i
    if (u != 0) {
      for (GaussInt& x : c) {
        for (int t = 0; t < u; ++t) x = GaussInt{-x.im, x.re};
      }
    }
    return;
  }
}

bool lex_less(const Ecv& a, const Ecv& b) {
  for (std::size_t i = 0; i < a.c.size() && i < b.c.size(); ++i) {
    if (a.c[i].re != b.c[i].re) return a.c[i].re < b.c[i].re;
    if (a.c[i].im != b.c[i].im) return a.c[i].im < b.c[i].im;
  }
  return a.c.size() < b.c.size();
}

namespace {

// Visits every canonical candidate with ||a||^2 <= radius_sq in a fixed
// deterministic order.  Returns false on hard_cap overflow.
template <typename F>
bool visit_candidates(int L, double radius_sq, std::size_t hard_cap, F&& f) {
  std::vector<GaussInt> cur(static_cast<std::size_t>(L));
  std::size_t count = 0;
  double norm_acc = 0.0;

  auto recurse = [&](auto&& self, int idx, bool leading) -> bool {
    if (idx == L) {
      if (leading) return true;  // all-zero
      if (++count > hard_cap) return false;
      f(std::span<const GaussInt>(cur), norm_acc);
      return true;
    }
    double rem = radius_sq + kRadiusSlack - norm_acc;
    int maxr = static_cast<int>(std::floor(std::sqrt(std::max(rem, 0.0))));
    int re_lo = leading ? 0 : -maxr;
    for (int re = re_lo; re <= maxr; ++re) {
      double rem_im = rem - static_cast<double>(re) * re;
      if (rem_im < 0.0) continue;
      int maxi = static_cast<int>(std::floor(std::sqrt(rem_im)));
      int im_lo = leading ? (re == 0 ? 0 : 0) : -maxi;
      int im_hi = leading ? (re == 0 ? 0 : maxi) : maxi;
      for (int im = im_lo; im <= im_hi; ++im) {
        cur[static_cast<std::size_t>(idx)] = GaussInt{re, im};
        double nsq = static_cast<double>(re) * re + static_cast<double>(im) * im;
        norm_acc += nsq;
        bool still_leading = leading && re == 0 && im == 0;
        if (!self(self, idx + 1, still_leading)) return false;
        norm_acc -= nsq;
      }
    }
    cur[static_cast<std::size_t>(idx)] = GaussInt{0, 0};
    return true;
  };
  return recurse(recurse, 0, true);
}

struct Candidate {
  double value = 0.0;
  double norm_sq = 0.0;
  Ecv vec;
};

// Full search order: value, then norm, then lexicographic.
bool order_less(const Candidate& a, const Candidate& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
  return lex_less(a.vec, b.vec);
}

bool feasible(const GaussianIntMatrix& excluded, const Ecv& a) {
  if (excluded.rows() == 0) return true;
  return exact_rank_with_row(excluded, a.c) == excluded.rows() + 1;
}

// Pruning certificate: a* V a >= lambda_plus * dist(a, span(null_rows))^2,
// plus a covering bound for reduction modulo the null-row lattice.
struct PruneInfo {
  bool ok = false;
  double lambda_plus = 0.0;
  double mu_sq = 0.0;
};

PruneInfo analyze_form(const QuadraticForm& V, const GaussianIntMatrix& null_rows, int null_dim) {
  PruneInfo info;
  const int n = V.dim();
  if (null_dim < 0 || null_dim >= n) return info;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(V.matrix(), Eigen::EigenvaluesOnly);
  const auto& eig = es.eigenvalues();  // ascending
  double scale = std::max(1.0, std::abs(eig(n - 1)));
  if (null_dim > 0) {
    if (null_rows.rows() != null_dim) return info;
    if (eig(null_dim - 1) > 1e-9 * scale) return info;
    // Each null row must actually sit in the kernel of V.
    CMatrix Ec = to_cmatrix(null_rows);
    double resid = (V.matrix() * Ec.adjoint()).cwiseAbs().maxCoeff();
    if (resid > 1e-7 * scale * std::max(1.0, Ec.cwiseAbs().maxCoeff())) return info;
    double mu = 0.0;
    for (int j = 0; j < null_rows.rows(); ++j) {
      double s = 0.0;
      for (int i = 0; i < null_rows.cols(); ++i) s += cfr::norm_sq(null_rows.at(j, i));
      mu += 0.5 * std::sqrt(s);
    }
    info.mu_sq = mu * mu;
  }
  double lam = eig(null_dim) - 1e-12 * scale;
  if (lam <= 0.0) return info;
  info.lambda_plus = lam;
  info.ok = true;
  return info;
}

// Enumerates ball `radius`, halving on overflow (never below kMinRadius).
// Returns the radius actually covered.
template <typename F>
double scan_with_halving(int L, double radius, std::size_t hard_cap, F&& f) {
  double r = std::max(radius, 1.0);
  while (true) {
    if (visit_candidates(L, r, hard_cap, f)) return r;
    if (r <= kMinRadius + kRadiusSlack) throw SearchOverflow{};
    r = std::max(r * 0.5, kMinRadius);
  }
}

// Real embedding of the Hermitian form: a_j = x_{2j} + i x_{2j+1} maps a* V a
// to x^T W x with 2x2 blocks [[Re, -Im], [Im, Re]] per entry of V.
Eigen::MatrixXd realify(const CMatrix& V) {
  const int L = static_cast<int>(V.rows());
  Eigen::MatrixXd W(2 * L, 2 * L);
  for (int j = 0; j < L; ++j) {
    for (int k = 0; k < L; ++k) {
      double re = V(j, k).real();
      double im = V(j, k).imag();
      W(2 * j, 2 * k) = re;
      W(2 * j, 2 * k + 1) = -im;
      W(2 * j + 1, 2 * k) = im;
      W(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return 0.5 * (W + W.transpose());
}

enum class ScanStatus { done, overflow, not_pd };

// Sphere decoding over the sublevel set {a != 0 : a* Vp a <= bound}.  Emits
// only canonical representatives, each exactly once, with their norm^2.
// Vp must be positive definite, otherwise not_pd is returned.
template <typename F>
ScanStatus scan_ellipsoid(const CMatrix& Vp, double bound, std::size_t hard_cap, F&& f) {
  const int L = static_cast<int>(Vp.rows());
  const int n = 2 * L;
  Eigen::MatrixXd W = realify(Vp);
  Eigen::LLT<Eigen::MatrixXd> llt(W);
  if (llt.info() != Eigen::Success) return ScanStatus::not_pd;
  Eigen::MatrixXd R = llt.matrixU();
  for (int i = 0; i < n; ++i) {
    if (!(R(i, i) > 1e-12)) return ScanStatus::not_pd;
  }
  const double B = bound * (1.0 + 1e-12) + 1e-12;
  if (B <= 0.0) return ScanStatus::done;

  std::vector<int> x(static_cast<std::size_t>(n), 0);
  std::vector<GaussInt> a(static_cast<std::size_t>(L));
  std::size_t count = 0;

  auto rec = [&](auto&& self, int i, double acc) -> bool {
    if (i < 0) {
      for (int j = 0; j < L; ++j) {
        a[static_cast<std::size_t>(j)] =
            GaussInt{x[static_cast<std::size_t>(2 * j)], x[static_cast<std::size_t>(2 * j + 1)]};
      }
      double nsq = 0.0;
      int lead = -1;
      for (int j = 0; j < L; ++j) {
        const GaussInt& g = a[static_cast<std::size_t>(j)];
        if (lead < 0 && !g.is_zero()) lead = j;
        nsq += cfr::norm_sq(g);
      }
      if (lead < 0) return true;  // zero vector
      const GaussInt& g = a[static_cast<std::size_t>(lead)];
      if (!(g.re >= 1 && g.im >= 0)) return true;  // unit rotation handled elsewhere
      if (++count > hard_cap) return false;
      f(std::span<const GaussInt>(a), nsq);
      return true;
    }
    double t = 0.0;
    for (int j = i + 1; j < n; ++j) t += R(i, j) * x[static_cast<std::size_t>(j)];
    double rem = B - acc;
    if (rem < 0.0) return true;
    double s = std::sqrt(rem);
    int lo = static_cast<int>(std::ceil((-s - t) / R(i, i) - 1e-12));
    int hi = static_cast<int>(std::floor((s - t) / R(i, i) + 1e-12));
    for (int xi = lo; xi <= hi; ++xi) {
      x[static_cast<std::size_t>(i)] = xi;
      double term = R(i, i) * xi + t;
      if (!self(self, i - 1, acc + term * term)) return false;
    }
    x[static_cast<std::size_t>(i)] = 0;
    return true;
  };
  return rec(rec, n - 1, 0.0) ? ScanStatus::done : ScanStatus::overflow;
}

// V with its certified null directions filled in by a weighted projector onto
// the excluded rows' span, making the sublevel set bounded without changing
// values on the coset-reduced candidates we care about.  With weight
// v0/mu^2, every candidate with value <= v0 and ||P a||^2 <= mu^2 satisfies
// a* Vp a <= 2 v0, keeping the ellipsoid tight in every direction.
CMatrix ridge_form(const QuadraticForm& V, const GaussianIntMatrix& null_rows, double weight) {
  CMatrix Vp = V.matrix();
  if (null_rows.rows() > 0) Vp += weight * projector(null_rows, V.dim());
  return 0.5 * (Vp + Vp.adjoint());
}

}  // namespace

std::vector<Ecv> enumerate_candidates(int L, double radius_sq, std::size_t hard_cap) {
  if (L < 1 || !(radius_sq >= 1.0)) {
    throw ContractViolation("enumerate_candidates: L >= 1 and radius_sq >= 1 required");
  }
  std::vector<Ecv> out;
  bool complete = visit_candidates(L, radius_sq, hard_cap, [&](std::span<const GaussInt> a, double) {
    out.push_back(Ecv{std::vector<GaussInt>(a.begin(), a.end())});
  });
  if (!complete) throw SearchOverflow{};
  return out;
}

std::vector<Ecv> enumerate_sublevel(const QuadraticForm& V, double value_bound, double radius_sq,
                                    std::size_t hard_cap) {
  std::vector<Ecv> out;
  ScanStatus st =
      scan_ellipsoid(V.matrix(), value_bound, hard_cap, [&](std::span<const GaussInt> a, double nsq) {
        if (nsq > radius_sq + kRadiusSlack) return;
        out.push_back(Ecv{std::vector<GaussInt>(a.begin(), a.end())});
      });
  if (st == ScanStatus::not_pd) throw ContractViolation("enumerate_sublevel: form not PD");
  if (st == ScanStatus::overflow) throw SearchOverflow{};
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

VectorSearchResult min_form_vector(const QuadraticForm& V, const SearchBudget& budget,
                                   const GaussianIntMatrix& excluded, int null_dim) {
  const int L = V.dim();
  if (excluded.rows() > 0 && excluded.cols() != L) {
    throw ContractViolation("min_form_vector: excluded dimension mismatch");
  }
  if (excluded.rows() > 0 && exact_rank(excluded) != excluded.rows()) {
    throw ContractViolation("min_form_vector: excluded rows dependent");
  }
  const double R = std::max(budget.radius_sq, 1.0);
  PruneInfo info = analyze_form(V, excluded, null_dim);

  std::optional<Candidate> best;
  auto consider = [&](std::span<const GaussInt> a, double nsq) {
    Candidate cand;
    cand.vec.c.assign(a.begin(), a.end());
    cand.norm_sq = nsq;
    cand.value = hermitian_form(a, V);
    if (best && !order_less(cand, *best)) return;
    if (!feasible(excluded, cand.vec)) return;
    best = std::move(cand);
  };

  double r = std::min(R, kMinRadius);
  r = scan_with_halving(L, r, budget.hard_cap, consider);
  while (!best && r < R - kRadiusSlack) {
    double covered = scan_with_halving(L, std::min(R, r * 4.0), budget.hard_cap, consider);
    if (covered <= r + kRadiusSlack) break;  // overflow caps the reachable radius
    r = covered;
  }
  if (!best) throw InfeasibleSearch{};

  // Settle the exact winner: every candidate that can still win has
  // a* V a <= best value, and its norm-minimal coset representatives (the
  // only ones a tie-break can select) stay inside the ridge ellipsoid
  // value + mu^2.  One bounded rescan therefore decides.
  bool settled = false;
  if (info.ok) {
    double v0 = std::max(best->value, 1e-12);
    double w = info.mu_sq > 0.0 ? v0 / info.mu_sq : 1.0;
    CMatrix Vp = ridge_form(V, excluded, w);
    double cb = 2.0 * v0 * (1.0 + 1e-9) + 1e-12;
    ScanStatus st = scan_ellipsoid(Vp, cb, budget.hard_cap, [&](std::span<const GaussInt> a, double nsq) {
      if (nsq > R + kRadiusSlack) return;
      consider(a, nsq);
    });
    settled = st == ScanStatus::done;
  }
  if (!settled) {
    double bound = R;
    if (info.ok) {
      bound = std::min(R, best->value / info.lambda_plus * (1.0 + 1e-9) + info.mu_sq + 1e-9);
    }
    bound = std::max(bound, best->norm_sq);
    if (bound > r + kRadiusSlack) {
      scan_with_halving(L, bound, budget.hard_cap, consider);
    }
  }
  return {best->vec, best->value};
}

MatrixSearchResult min_form_matrix(const QuadraticForm& V, const SearchBudget& budget,
                                   const GaussianIntMatrix& fixed_rows, int rows_needed,
                                   int null_dim) {
  const int L = V.dim();
  if (rows_needed < 1) throw ContractViolation("min_form_matrix: rows_needed >= 1 required");
  if (fixed_rows.rows() + rows_needed > L) {
    throw ContractViolation("min_form_matrix: too many rows requested");
  }
  if (fixed_rows.rows() > 0 && exact_rank(fixed_rows) != fixed_rows.rows()) {
    throw ContractViolation("min_form_matrix: fixed rows dependent");
  }
  const double R = std::max(budget.radius_sq, 1.0);
  PruneInfo info = analyze_form(V, fixed_rows, null_dim);

  double r = std::min(R, kMinRadius);
  for (int iter = 0; iter < 32; ++iter) {
    std::vector<Candidate> cands;
    r = scan_with_halving(L, r, budget.hard_cap, [&](std::span<const GaussInt> a, double nsq) {
      Candidate c;
      c.vec.c.assign(a.begin(), a.end());
      c.norm_sq = nsq;
      c.value = hermitian_form(a, V);
      cands.push_back(std::move(c));
    });
    std::sort(cands.begin(), cands.end(), order_less);

    GaussianIntMatrix stack = fixed_rows.rows() > 0 ? fixed_rows : GaussianIntMatrix::empty(L);
    std::vector<Candidate> admitted;
    for (const Candidate& c : cands) {
      if (exact_rank_with_row(stack, c.vec.c) != stack.rows() + 1) continue;
      stack.append_row(c.vec.c);
      admitted.push_back(c);
      if (static_cast<int>(admitted.size()) == rows_needed) break;
    }
    if (static_cast<int>(admitted.size()) < rows_needed) {
      if (r < R - kRadiusSlack) {
        double next = std::min(R, r * 4.0);
        if (next <= r + kRadiusSlack) throw InfeasibleSearch{};
        r = next;
        continue;
      }
      throw InfeasibleSearch{};
    }
    double v_last = admitted.back().value;
    if (info.ok) {
      // Every row the full-ball greedy can admit has value <= v_last, and its
      // norm-minimal coset representatives lie in the ridge ellipsoid; rerun
      // the greedy on exactly that set.
      double v0 = std::max(v_last, 1e-12);
      double w = info.mu_sq > 0.0 ? v0 / info.mu_sq : 1.0;
      CMatrix Vp = ridge_form(V, fixed_rows, w);
      double cb = 2.0 * v0 * (1.0 + 1e-9) + 1e-12;
      std::vector<Candidate> ecands;
      ScanStatus st =
          scan_ellipsoid(Vp, cb, budget.hard_cap, [&](std::span<const GaussInt> a, double nsq) {
            if (nsq > R + kRadiusSlack) return;
            Candidate c;
            c.vec.c.assign(a.begin(), a.end());
            c.norm_sq = nsq;
            c.value = hermitian_form(a, V);
            ecands.push_back(std::move(c));
          });
      if (st == ScanStatus::done) {
        std::sort(ecands.begin(), ecands.end(), order_less);
        GaussianIntMatrix estack = fixed_rows.rows() > 0 ? fixed_rows : GaussianIntMatrix::empty(L);
        std::vector<Candidate> eadmit;
        for (const Candidate& c : ecands) {
          if (exact_rank_with_row(estack, c.vec.c) != estack.rows() + 1) continue;
          estack.append_row(c.vec.c);
          eadmit.push_back(c);
          if (static_cast<int>(eadmit.size()) == rows_needed) break;
        }
        if (static_cast<int>(eadmit.size()) == rows_needed) {
          MatrixSearchResult res;
          res.value = eadmit.back().value;
          for (Candidate& c : eadmit) res.rows.push_back(std::move(c.vec));
          return res;
        }
      }
    }
    double n_max = 0.0;
    for (const Candidate& c : admitted) n_max = std::max(n_max, c.norm_sq);
    double bound = R;
    if (info.ok) {
      bound = std::min(R, v_last / info.lambda_plus * (1.0 + 1e-9) + info.mu_sq + 1e-9);
    }
    bound = std::max(bound, n_max);
    if (bound <= r + kRadiusSlack) {
      MatrixSearchResult res;
      res.value = v_last;
      for (Candidate& c : admitted) res.rows.push_back(std::move(c.vec));
      return res;
    }
    r = bound;
  }
  throw SearchOverflow{};  // bound iteration failed to settle
}

double icmf_radius(double snr_t, const CVector& g_eff, const GaussianIntMatrix& E) {
  double gn = g_eff.squaredNorm();
  double safe = 1.0 + snr_t * gn;
  if (E.rows() > 0) {
    CMatrix P = projector(E, E.cols());
    double pf = P.norm();  // Frobenius, as printed
    double inv_s = 1.0 / snr_t;
    double denom = inv_s / (inv_s + gn) - pf;
    if (denom > 0.0) {
      double tight = 1.0 / denom;
      if (tight < safe) return std::max(1.0, tight);
    }
  }
  return std::max(1.0, safe);
}

double psd_search_radius(const QuadraticForm& V, const GaussianIntMatrix& null_rows) {
  const int n = V.dim();
  const int null_dim = null_rows.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(V.matrix(), Eigen::EigenvaluesOnly);
  const auto& eig = es.eigenvalues();
  double scale = std::max(1.0, std::abs(eig(n - 1)));
  double lam = eig(std::min(null_dim, n - 1)) - 1e-12 * scale;
  double mu = 0.0;
  for (int j = 0; j < null_rows.rows(); ++j) {
    double s = 0.0;
    for (int i = 0; i < null_rows.cols(); ++i) s += cfr::norm_sq(null_rows.at(j, i));
    mu += 0.5 * std::sqrt(s);
  }
  if (lam <= 1e-12) return 1e12;  // degenerate; the hard cap governs
  return 1.0 / lam * (1.0 + 1e-9) + mu * mu + 1.0;
}

}  // namespace cfr
