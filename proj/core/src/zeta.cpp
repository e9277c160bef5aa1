#include "twistzeta/zeta.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tz {

DirichletPoly DirichletPoly::term(long n, const mpz_class& a) {
  if (n < 1) throw std::invalid_argument("Dirichlet index must be positive");
  DirichletPoly d;
  d.add_term(n, a);
  return d;
}

void DirichletPoly::add_term(long n, const mpz_class& a) {
  if (a == 0) return;
  auto& c = t_[n];
  c += a;
  if (c == 0) t_.erase(n);
}

mpz_class DirichletPoly::coeff(long n) const {
  auto it = t_.find(n);
  return it == t_.end() ? mpz_class(0) : it->second;
}

bool DirichletPoly::nonnegative() const {
  for (const auto& [n, a] : t_)
    if (a < 0) return false;
  return true;
}

std::string DirichletPoly::str() const {
  if (t_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, a] : t_) {
    mpz_class c = a;
    if (!first) {
      os << (c < 0 ? " - " : " + ");
      c = abs(c);
    }
    first = false;
    if (n == 1) {
      os << c.get_str();
      continue;
    }
    if (c == -1)
      os << "-";
    else if (c != 1)
      os << c.get_str() << "*";
    os << n << "^-s";
  }
  return os.str();
}

DirichletPoly DirichletPoly::operator+(const DirichletPoly& o) const {
  DirichletPoly r = *this;
  for (const auto& [n, a] : o.t_) r.add_term(n, a);
  return r;
}

DirichletPoly DirichletPoly::operator*(const DirichletPoly& o) const {
  DirichletPoly r;
  for (const auto& [n, a] : t_)
    for (const auto& [m, b] : o.t_) r.add_term(n * m, a * b);
  return r;
}

DirichletPoly DirichletPoly::shift(long m) const {
  if (m < 1) throw std::invalid_argument("shift must be positive");
  DirichletPoly r;
  for (const auto& [n, a] : t_) r.t_[n * m] = a;
  return r;
}

DirichletPoly DirichletPoly::scale(const mpz_class& k) const {
  DirichletPoly r;
  for (const auto& [n, a] : t_) r.add_term(n, a * k);
  return r;
}

DirichletPoly rep_zeta(const Subgroup& H) {
  DirichletPoly z;
  for (const auto& chi : character_table(H)->irr) z = z + DirichletPoly::term(chi.degree(), 1);
  return z;
}

DirichletPoly brute_twist_zeta(const Subgroup& H, const std::vector<LinearChar>& linG) {
  DirichletPoly z;
  for (const auto& tc : twist_classes(H, linG)) z = z + DirichletPoly::term(tc.degree, 1);
  return z;
}

DirichletPoly brute_twist_zeta(const GroupPtr& G) {
  Subgroup all = whole_group(G);
  return brute_twist_zeta(all, linear_characters(all));
}

namespace {

DirichletPoly f_tilde_from(const std::vector<TwistClass>& classes_of_L, const TwistClass& theta_cls) {
  DirichletPoly f;
  for (int i : classes_over(classes_of_L, theta_cls)) {
    long d = classes_of_L[i].degree;
    if (d % theta_cls.degree != 0) throw std::logic_error("degree ratio over N is not an integer");
    f = f + DirichletPoly::term(d / theta_cls.degree, 1);
  }
  return f;
}

template <class F>
void parallel_for(int count, int jobs, F&& body) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(jobs, count); ++w)
    pool.emplace_back([&] {
      for (int i; (i = next++) < count;) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(err_mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace

DirichletPoly f_tilde(const TwistSetup& S, const Subgroup& L, const TwistClass& theta_cls) {
  return f_tilde_from(twist_classes(L, S.linG), theta_cls);
}

ZetaClassification assemble_twist_zeta(const TwistSetup& S, const ZetaOptions& opt) {
  ZetaClassification out;
  out.classes = twist_classes(S.N, S.linG);
  const int nc = static_cast<int>(out.classes.size());

  std::vector<ClassInvariants> inv(nc);
  parallel_for(nc, opt.jobs, [&](int i) { inv[i] = class_invariants(S, out.classes[i], opt.inv); });

  // ids and buckets, sequentially in class order
  struct GammaKey {
    Subgroup K;
    GammaGroup gamma;
  };
  std::vector<GammaKey> gammas;
  std::vector<int> c_reps;  // class index representing each C id
  out.records.resize(nc);
  for (int i = 0; i < nc; ++i) {
    const auto& ci = inv[i];
    auto& rec = out.records[i];
    rec.cls = i;
    rec.degree = out.classes[i].degree;
    rec.st = ci.st;
    for (size_t g = 0; g < gammas.size() && rec.gamma_id < 0; ++g)
      if (gammas[g].K == ci.st.K && gammas[g].gamma == ci.gamma) rec.gamma_id = static_cast<int>(g);
    if (rec.gamma_id < 0) {
      rec.gamma_id = static_cast<int>(gammas.size());
      gammas.push_back({ci.st.K, ci.gamma});
    }
    for (size_t c = 0; c < c_reps.size() && rec.c_id < 0; ++c) {
      const auto& o = inv[c_reps[c]];
      if (o.Kp == ci.Kp && h2_equal(o.C, ci.C)) rec.c_id = static_cast<int>(c);
    }
    if (rec.c_id < 0) {
      rec.c_id = static_cast<int>(c_reps.size());
      c_reps.push_back(i);
    }
    int t_next = 0;
    for (size_t b = 0; b < out.buckets.size() && rec.bucket < 0; ++b) {
      auto& bk = out.buckets[b];
      if (bk.L != ci.st.L || bk.K != ci.st.K || bk.gamma != ci.gamma || bk.c_id != rec.c_id) continue;
      if (t_equal(inv[bk.classes.front()], ci)) {
        rec.bucket = static_cast<int>(b);
        rec.t_id = bk.t_id;
      } else {
        t_next = std::max(t_next, bk.t_id + 1);
      }
    }
    if (rec.bucket < 0) {
      rec.bucket = static_cast<int>(out.buckets.size());
      rec.t_id = t_next;
      Bucket bk;
      bk.L = ci.st.L;
      bk.K = ci.st.K;
      bk.gamma = ci.gamma;
      bk.c_id = rec.c_id;
      bk.t_id = t_next;
      out.buckets.push_back(std::move(bk));
    }
    auto& bk = out.buckets[rec.bucket];
    bk.classes.push_back(i);
    bk.partial = bk.partial + DirichletPoly::term(rec.degree, 1);
  }

  // f~ per bucket; classes of each L computed once
  const int nb = static_cast<int>(out.buckets.size());
  parallel_for(nb, opt.jobs, [&](int b) {
    auto& bk = out.buckets[b];
    auto classes_of_L = twist_classes(bk.L, S.linG);
    bk.f = f_tilde_from(classes_of_L, out.classes[bk.classes.front()]);
    if (opt.check_members) {
      for (int i : bk.classes) {
        bk.member_f.push_back(f_tilde_from(classes_of_L, out.classes[i]));
        if (bk.member_f.back() != bk.f) bk.f_agrees = false;
      }
    }
  });

  // rational assembly: |G:L|^-1 * (|G:L|^-s f~ partial)
  std::map<long, mpq_class> acc;
  const long order = S.G->order();
  for (const auto& bk : out.buckets) {
    long idx = order / bk.L.size();
    out.n_series = out.n_series + bk.partial;
    DirichletPoly term = (bk.f * bk.partial).shift(idx);
    for (const auto& [n, a] : term.terms()) acc[n] += mpq_class(a, idx);
  }
  for (auto& [n, a] : acc) {
    a.canonicalize();
    if (a.get_den() != 1) {
      out.integral = false;
      continue;
    }
    out.assembled = out.assembled + DirichletPoly::term(n, a.get_num());
  }
  out.brute = brute_twist_zeta(S.all, S.linG);
  out.partition_ok = out.n_series == brute_twist_zeta(S.N, S.linG);
  out.agree = out.integral && out.assembled == out.brute;
  return out;
}

}  // namespace tz
