#include "octa/module_category.hpp"

#include <algorithm>
#include <sstream>

#include "octa/errors.hpp"
#include "octa/snf.hpp"

namespace octa {

FpObject FpObject::from_exponents(const Context& ctx, const std::vector<int>& exps) {
  FpObject x(ctx);
  for (int e : exps) {
    if (e < 0 || e > ctx.m) throw ContractError("FpObject: exponent out of [0, m]");
    ++x.mult[static_cast<size_t>(e)];
  }
  return x;
}

int FpObject::summands() const {
  int n = 0;
  for (int a : mult) n += a;
  return n;
}

int FpObject::exponent(int k) const {
  for (size_t i = 0; i < mult.size(); ++i) {
    if (k < mult[i]) return static_cast<int>(i);
    k -= mult[i];
  }
  throw ContractError("FpObject::exponent: summand index out of range");
}

std::vector<int> FpObject::exponent_list() const {
  std::vector<int> out;
  for (size_t i = 0; i < mult.size(); ++i)
    for (int s = 0; s < mult[i]; ++s) out.push_back(static_cast<int>(i));
  return out;
}

int FpObject::index_of(int exp, int copy) const {
  int off = 0;
  for (int i = 0; i < exp; ++i) off += mult[static_cast<size_t>(i)];
  return off + copy;
}

bool FpObject::is_zero_object() const {
  for (int a : mult)
    if (a != 0) return false;
  return true;
}

std::string to_string(const Context& ctx, const FpObject& x) {
  if (x.is_zero_object()) return "0";
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < x.mult.size(); ++i)
    for (int s = 0; s < x.mult[i]; ++s) {
      if (!first) os << "+";
      os << "Z/" << ctx.p << "^" << i;
      first = false;
    }
  return os.str();
}

bool is_bijective(const Context& ctx, const FpObject& x) {
  for (int i = 1; i < ctx.m; ++i)
    if (x.mult[static_cast<size_t>(i)] != 0) return false;
  return true;
}

std::optional<std::uint64_t> object_order(const Context& ctx, const FpObject& x,
                                          std::uint64_t cap) {
  std::uint64_t order = 1;
  for (size_t i = 0; i < x.mult.size(); ++i)
    for (int s = 0; s < x.mult[i]; ++s) {
      std::uint64_t q = static_cast<std::uint64_t>(ctx.pow(static_cast<int>(i)));
      if (order > cap / q) return std::nullopt;
      order *= q;
    }
  return order;
}

DirectSum direct_sum(const Context& ctx, const FpObject& x, const FpObject& y) {
  DirectSum ds;
  ds.object = FpObject(ctx);
  for (size_t i = 0; i < ds.object.mult.size(); ++i)
    ds.object.mult[i] = x.mult[i] + y.mult[i];
  ds.left_index.resize(static_cast<size_t>(x.summands()));
  ds.right_index.resize(static_cast<size_t>(y.summands()));
  for (int k = 0; k < x.summands(); ++k) {
    int e = x.exponent(k);
    int copy = k - x.index_of(e, 0);
    ds.left_index[static_cast<size_t>(k)] = ds.object.index_of(e, copy);
  }
  for (int k = 0; k < y.summands(); ++k) {
    int e = y.exponent(k);
    int copy = k - y.index_of(e, 0);
    ds.right_index[static_cast<size_t>(k)] = ds.object.index_of(e, x.mult[static_cast<size_t>(e)] + copy);
  }
  return ds;
}

EMorphism EMorphism::make(const Context& ctx, const FpObject& src, const FpObject& tgt,
                          IntMatrix mat) {
  if (src.mult.size() != static_cast<size_t>(ctx.m) + 1 ||
      tgt.mult.size() != static_cast<size_t>(ctx.m) + 1)
    throw ContractError("EMorphism: object does not match context");
  if (mat.rows != src.summands() || mat.cols != tgt.summands())
    throw ContractError("EMorphism: matrix shape does not match objects");
  std::vector<int> es = src.exponent_list(), fs = tgt.exponent_list();
  for (int r = 0; r < mat.rows; ++r)
    for (int c = 0; c < mat.cols; ++c) {
      Int modc = ctx.pow(fs[static_cast<size_t>(c)]);
      Int v = floor_mod(mat.at(r, c), modc);
      int gap = fs[static_cast<size_t>(c)] - es[static_cast<size_t>(r)];
      if (gap > 0 && v % ctx.pow(gap) != 0)
        throw ContractError("EMorphism: entry violates divisibility (not well defined)");
      mat.at(r, c) = v;
    }
  return EMorphism{ctx, src, tgt, std::move(mat)};
}

EMorphism EMorphism::identity(const Context& ctx, const FpObject& x) {
  return make(ctx, x, x, IntMatrix::identity(x.summands()));
}

EMorphism EMorphism::zero(const Context& ctx, const FpObject& src, const FpObject& tgt) {
  return make(ctx, src, tgt, IntMatrix(src.summands(), tgt.summands()));
}

bool EMorphism::is_zero() const {
  for (Int v : mat.a)
    if (v != 0) return false;
  return true;
}

EMorphism compose(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx) throw ContractError("compose: context mismatch");
  if (!(f.tgt == g.src)) throw ContractError("compose: object mismatch");
  std::vector<int> fs = g.tgt.exponent_list();
  IntMatrix r(f.mat.rows, g.mat.cols);
  for (int i = 0; i < f.mat.rows; ++i)
    for (int j = 0; j < g.mat.cols; ++j) {
      Int modc = f.ctx.pow(fs[static_cast<size_t>(j)]);
      Int acc = 0;
      for (int k = 0; k < f.mat.cols; ++k)
        acc = floor_mod(acc + checked_mul(f.mat.at(i, k), g.mat.at(k, j)), modc);
      r.at(i, j) = acc;
    }
  return EMorphism::make(f.ctx, f.src, g.tgt, std::move(r));
}

EMorphism add(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx || !(f.src == g.src) || !(f.tgt == g.tgt))
    throw ContractError("add: object mismatch");
  return EMorphism::make(f.ctx, f.src, f.tgt, mat_add(f.mat, g.mat));
}

EMorphism sub(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx || !(f.src == g.src) || !(f.tgt == g.tgt))
    throw ContractError("sub: object mismatch");
  return EMorphism::make(f.ctx, f.src, f.tgt, mat_sub(f.mat, g.mat));
}

EMorphism negate(const EMorphism& f) {
  return EMorphism::make(f.ctx, f.src, f.tgt, mat_neg(f.mat));
}

EMorphism direct_sum(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx) throw ContractError("direct_sum: context mismatch");
  DirectSum s = direct_sum(f.ctx, f.src, g.src);
  DirectSum t = direct_sum(f.ctx, f.tgt, g.tgt);
  IntMatrix m(s.object.summands(), t.object.summands());
  for (int r = 0; r < f.mat.rows; ++r)
    for (int c = 0; c < f.mat.cols; ++c)
      m.at(s.left_index[static_cast<size_t>(r)], t.left_index[static_cast<size_t>(c)]) =
          f.mat.at(r, c);
  for (int r = 0; r < g.mat.rows; ++r)
    for (int c = 0; c < g.mat.cols; ++c)
      m.at(s.right_index[static_cast<size_t>(r)], t.right_index[static_cast<size_t>(c)]) =
          g.mat.at(r, c);
  return EMorphism::make(f.ctx, s.object, t.object, std::move(m));
}

HomSet::HomSet(const Context& ctx, FpObject x, FpObject y, std::uint64_t cap)
    : ctx_(ctx), x_(std::move(x)), y_(std::move(y)) {
  std::vector<int> es = x_.exponent_list(), fs = y_.exponent_list();
  entry_mod_.reserve(es.size() * fs.size());
  entry_step_.reserve(es.size() * fs.size());
  for (int e : es)
    for (int f : fs) {
      Int cnt = ctx_.pow(std::min(e, f));
      entry_mod_.push_back(cnt);
      entry_step_.push_back(ctx_.pow(std::max(0, f - e)));
      if (cnt > 1) {
        if (size_ > cap / static_cast<std::uint64_t>(cnt))
          throw EnumTooLargeError("hom-set too large to enumerate: hom(" +
                                  to_string(ctx_, x_) + ", " + to_string(ctx_, y_) + ")");
        size_ *= static_cast<std::uint64_t>(cnt);
      }
    }
}

EMorphism HomSet::at(std::uint64_t idx) const {
  if (idx >= size_) throw ContractError("HomSet::at: index out of range");
  IntMatrix m(x_.summands(), y_.summands());
  for (size_t s = 0; s < entry_mod_.size(); ++s) {
    std::uint64_t cnt = static_cast<std::uint64_t>(entry_mod_[s]);
    std::uint64_t t = idx % cnt;
    idx /= cnt;
    m.a[s] = checked_mul(entry_step_[s], static_cast<Int>(t));
  }
  return EMorphism::make(ctx_, x_, y_, std::move(m));
}

std::vector<Int> element_at(const Context& ctx, const FpObject& x, std::uint64_t idx) {
  std::vector<int> es = x.exponent_list();
  std::vector<Int> elem(es.size(), 0);
  for (size_t r = 0; r < es.size(); ++r) {
    std::uint64_t q = static_cast<std::uint64_t>(ctx.pow(es[r]));
    elem[r] = static_cast<Int>(idx % q);
    idx /= q;
  }
  return elem;
}

std::vector<Int> apply_morphism(const EMorphism& f, const std::vector<Int>& elem) {
  if (elem.size() != static_cast<size_t>(f.mat.rows))
    throw ContractError("apply_morphism: element size mismatch");
  std::vector<int> fs = f.tgt.exponent_list();
  std::vector<Int> out(fs.size(), 0);
  for (size_t c = 0; c < fs.size(); ++c) {
    Int modc = f.ctx.pow(fs[c]);
    Int acc = 0;
    for (int r = 0; r < f.mat.rows; ++r)
      acc = floor_mod(acc + checked_mul(elem[static_cast<size_t>(r)], f.mat.at(r, static_cast<int>(c))), modc);
    out[c] = acc;
  }
  return out;
}

std::optional<ExactnessSizes> sizes_by_enumeration(const EMorphism& f, std::uint64_t cap) {
  auto order = object_order(f.ctx, f.src, cap);
  if (!order) return std::nullopt;
  std::uint64_t kernel = 0;
  for (std::uint64_t i = 0; i < *order; ++i) {
    std::vector<Int> img = apply_morphism(f, element_at(f.ctx, f.src, i));
    bool zero = true;
    for (Int v : img)
      if (v != 0) {
        zero = false;
        break;
      }
    if (zero) ++kernel;
  }
  return ExactnessSizes{kernel, *order / kernel};
}

namespace {

// Exponent of |coker f| as a power of p, via SNF of [F; diag(p^{f_c})].
int coker_exponent(const EMorphism& f) {
  std::vector<int> fs = f.tgt.exponent_list();
  int k = static_cast<int>(fs.size());
  IntMatrix s(f.mat.rows + k, k);
  for (int r = 0; r < f.mat.rows; ++r)
    for (int c = 0; c < k; ++c) s.at(r, c) = f.mat.at(r, c);
  for (int c = 0; c < k; ++c) s.at(f.mat.rows + c, c) = f.ctx.pow(fs[static_cast<size_t>(c)]);
  SnfResult snf = smith_normal_form(s);
  int exp = 0;
  for (int i = 0; i < k; ++i) {
    Int d = snf.d.at(i, i);
    Int v = valuation(d, f.ctx.p);
    if (d == 0 || f.ctx.pow(static_cast<int>(v)) != d)
      throw InternalError("coker_exponent: invariant factor is not a p-power");
    exp += static_cast<int>(v);
  }
  return exp;
}

int order_exponent(const FpObject& x) {
  int e = 0;
  for (size_t i = 0; i < x.mult.size(); ++i) e += static_cast<int>(i) * x.mult[i];
  return e;
}

std::uint64_t pow_u64(Int p, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    std::uint64_t prev = r;
    r *= static_cast<std::uint64_t>(p);
    if (r / static_cast<std::uint64_t>(p) != prev) throw OverflowError("group order exceeds uint64");
  }
  return r;
}

}  // namespace

ExactnessSizes sizes_by_snf(const EMorphism& f) {
  int im_exp = order_exponent(f.tgt) - coker_exponent(f);
  int ker_exp = order_exponent(f.src) - im_exp;
  return ExactnessSizes{pow_u64(f.ctx.p, ker_exp), pow_u64(f.ctx.p, im_exp)};
}

std::uint64_t kernel_size(const EMorphism& f) { return sizes_by_snf(f).kernel; }
std::uint64_t image_size(const EMorphism& f) { return sizes_by_snf(f).image; }

bool is_injective(const EMorphism& f) {
  return order_exponent(f.src) - (order_exponent(f.tgt) - coker_exponent(f)) == 0;
}

bool is_surjective(const EMorphism& f) { return coker_exponent(f) == 0; }

bool is_exact(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx || !(f.tgt == g.src)) throw ContractError("is_exact: object mismatch");
  bool composite_zero = compose(f, g).is_zero();

  int im_f_exp = order_exponent(f.tgt) - coker_exponent(f);
  int ker_f_exp = order_exponent(f.src) - im_f_exp;
  int im_g_exp = order_exponent(g.tgt) - coker_exponent(g);
  int ker_g_exp = order_exponent(g.src) - im_g_exp;
  bool snf_verdict = composite_zero && ker_f_exp == 0 && im_g_exp == order_exponent(g.tgt) &&
                     im_f_exp == ker_g_exp;

  // Cross-check against the element-enumeration oracle when feasible.
  std::uint64_t cap = enumeration_cap();
  auto ef = sizes_by_enumeration(f, cap);
  auto eg = sizes_by_enumeration(g, cap);
  if (ef && eg) {
    bool enum_verdict = composite_zero && ef->kernel == 1 &&
                        eg->image == object_order(g.ctx, g.tgt, cap).value_or(0) &&
                        ef->image == eg->kernel;
    if (enum_verdict != snf_verdict)
      throw InternalError("is_exact: SNF path and enumeration oracle disagree");
  }
  return snf_verdict;
}

FpObject shift_object(const Context& ctx, const FpObject& x) {
  FpObject y(ctx);
  for (int i = 0; i <= ctx.m; ++i)
    y.mult[static_cast<size_t>(i)] = x.mult[static_cast<size_t>(ctx.m - i)];
  return y;
}

DistinguishedSes distinguished_ses(const Context& ctx, const FpObject& x) {
  int n = x.summands();
  FpObject b(ctx);
  b.mult[static_cast<size_t>(ctx.m)] = n;
  FpObject xs = shift_object(ctx, x);

  IntMatrix mono(n, n);
  std::vector<int> es = x.exponent_list();
  for (int r = 0; r < n; ++r) mono.at(r, r) = ctx.pow(ctx.m - es[static_cast<size_t>(r)]);

  IntMatrix epi(n, n);
  for (int r = 0; r < n; ++r) {
    int i = es[static_cast<size_t>(r)];
    int copy = r - x.index_of(i, 0);
    int a_i = x.mult[static_cast<size_t>(i)];
    // Block reversal: copy s of exponent i maps to copy a_i - 1 - s of m - i.
    epi.at(r, xs.index_of(ctx.m - i, a_i - 1 - copy)) = 1;
  }
  return DistinguishedSes{EMorphism::make(ctx, x, b, std::move(mono)), b,
                          EMorphism::make(ctx, b, xs, std::move(epi)), xs};
}

EMorphism pair_into_sum(const EMorphism& b, const EMorphism& c) {
  if (b.ctx != c.ctx || !(b.src == c.src)) throw ContractError("pair_into_sum: source mismatch");
  DirectSum t = direct_sum(b.ctx, b.tgt, c.tgt);
  IntMatrix m(b.mat.rows, t.object.summands());
  for (int r = 0; r < b.mat.rows; ++r) {
    for (int j = 0; j < b.mat.cols; ++j) m.at(r, t.left_index[static_cast<size_t>(j)]) = b.mat.at(r, j);
    for (int j = 0; j < c.mat.cols; ++j) m.at(r, t.right_index[static_cast<size_t>(j)]) = c.mat.at(r, j);
  }
  return EMorphism::make(b.ctx, b.src, t.object, std::move(m));
}

EMorphism copair_from_sum(const EMorphism& d, const EMorphism& e) {
  if (d.ctx != e.ctx || !(d.tgt == e.tgt)) throw ContractError("copair_from_sum: target mismatch");
  DirectSum s = direct_sum(d.ctx, d.src, e.src);
  IntMatrix m(s.object.summands(), d.mat.cols);
  for (int r = 0; r < d.mat.rows; ++r)
    for (int j = 0; j < d.mat.cols; ++j) m.at(s.left_index[static_cast<size_t>(r)], j) = d.mat.at(r, j);
  for (int r = 0; r < e.mat.rows; ++r)
    for (int j = 0; j < e.mat.cols; ++j)
      m.at(s.right_index[static_cast<size_t>(r)], j) = checked_neg(e.mat.at(r, j));
  return EMorphism::make(d.ctx, s.object, d.tgt, std::move(m));
}

bool is_pure_square(const Quadrangle& q) {
  if (!(q.b.src == q.c.src) || !(q.b.tgt == q.d.src) || !(q.c.tgt == q.e.src) ||
      !(q.d.tgt == q.e.tgt))
    throw ContractError("is_pure_square: corners do not form a quadrangle");
  if (!(compose(q.b, q.d) == compose(q.c, q.e)))
    throw ContractError("is_pure_square: quadrangle does not commute");
  return is_exact(pair_into_sum(q.b, q.c), copair_from_sum(q.d, q.e));
}

Cokernel cokernel(const EMorphism& f) {
  const Context& ctx = f.ctx;
  std::vector<int> fs = f.tgt.exponent_list();
  int k = static_cast<int>(fs.size());
  IntMatrix s(k + f.mat.rows, k);
  for (int c = 0; c < k; ++c) s.at(c, c) = ctx.pow(fs[static_cast<size_t>(c)]);
  for (int r = 0; r < f.mat.rows; ++r)
    for (int c = 0; c < k; ++c) s.at(k + r, c) = f.mat.at(r, c);
  SnfResult snf = smith_normal_form(s);

  std::vector<int> vals(static_cast<size_t>(k));
  FpObject q(ctx);
  std::vector<int> kept;
  for (int c = 0; c < k; ++c) {
    Int d = snf.d.at(c, c);
    Int v = valuation(d, ctx.p);
    if (d == 0 || ctx.pow(static_cast<int>(v)) != d)
      throw InternalError("cokernel: invariant factor is not a p-power");
    vals[static_cast<size_t>(c)] = static_cast<int>(v);
    if (v > 0) {
      kept.push_back(c);
      ++q.mult[static_cast<size_t>(v)];
    }
  }
  IntMatrix proj(k, static_cast<int>(kept.size()));
  for (int r = 0; r < k; ++r)
    for (size_t t = 0; t < kept.size(); ++t) proj.at(r, static_cast<int>(t)) = snf.v.at(r, kept[t]);
  Cokernel ck{q, EMorphism::make(ctx, f.tgt, q, std::move(proj)), snf.v,
              unimodular_inverse(snf.v), kept};
  if (!compose(f, ck.proj).is_zero()) throw InternalError("cokernel: f.proj != 0");
  return ck;
}

EMorphism induced_from_cokernel(const Cokernel& ck, const EMorphism& s) {
  // s: tgt(f) -> W with f.s = 0; the induced map h: Q -> W satisfies proj.h = s.
  const Context& ctx = s.ctx;
  IntMatrix raw = mat_mul(ck.v_inv, s.mat);
  IntMatrix h(ck.object.summands(), s.mat.cols);
  for (size_t t = 0; t < ck.kept.size(); ++t)
    for (int j = 0; j < s.mat.cols; ++j) h.at(static_cast<int>(t), j) = raw.at(ck.kept[t], j);
  EMorphism out = EMorphism::make(ctx, ck.object, s.tgt, std::move(h));
  if (!(compose(ck.proj, out) == s)) throw InternalError("induced_from_cokernel: proj.h != s");
  return out;
}

std::optional<EMorphism> solve_right_factor(const EMorphism& q, const EMorphism& r) {
  if (q.ctx != r.ctx || !(q.src == r.src)) throw ContractError("solve_right_factor: source mismatch");
  const Context& ctx = q.ctx;
  std::vector<int> ys = q.tgt.exponent_list();
  std::vector<int> zs = r.tgt.exponent_list();
  IntMatrix g(static_cast<int>(ys.size()), static_cast<int>(zs.size()));
  for (size_t c = 0; c < zs.size(); ++c) {
    Int modc = ctx.pow(zs[c]);
    // Substitute away the divisibility constraint: column entry at row rr is
    // p^{max(0, z_c - y_rr)} * t_rr.
    IntMatrix a(q.mat.rows, static_cast<int>(ys.size()));
    for (int i = 0; i < q.mat.rows; ++i)
      for (size_t rr = 0; rr < ys.size(); ++rr)
        a.at(i, static_cast<int>(rr)) =
            floor_mod(checked_mul(q.mat.at(i, static_cast<int>(rr)),
                                  ctx.pow(std::max(0, zs[c] - ys[rr]))),
                      modc);
    IntMatrix b(q.mat.rows, 1);
    for (int i = 0; i < q.mat.rows; ++i) b.at(i, 0) = r.mat.at(i, static_cast<int>(c));
    auto t = solve_matrix_congruence(a, b, {modc});
    if (!t) return std::nullopt;
    for (size_t rr = 0; rr < ys.size(); ++rr)
      g.at(static_cast<int>(rr), static_cast<int>(c)) =
          floor_mod(checked_mul(t->at(static_cast<int>(rr), 0),
                                ctx.pow(std::max(0, zs[c] - ys[rr]))),
                    modc);
  }
  EMorphism out = EMorphism::make(ctx, q.tgt, r.tgt, std::move(g));
  if (!(compose(q, out) == r)) throw InternalError("solve_right_factor: substitution check failed");
  return out;
}

EMorphism extend_along_mono(const EMorphism& mono, const EMorphism& f) {
  if (!(mono.src == f.src)) throw ContractError("extend_along_mono: source mismatch");
  if (!is_injective(mono)) throw ContractError("extend_along_mono: mono is not injective");
  if (!is_bijective(f.ctx, f.tgt)) throw ContractError("extend_along_mono: target is not bijective");
  auto g = solve_right_factor(mono, f);
  if (!g) throw InternalError("extend_along_mono: extension must exist for bijective targets");
  return *g;
}

}  // namespace octa
