#include "octa/stable_category.hpp"

#include <algorithm>

#include "octa/errors.hpp"
#include "octa/snf.hpp"

namespace octa {

Int stable_entry_modulus(const Context& ctx, int e, int f) {
  return ctx.pow(std::min(ctx.m - e, f));
}

StableMorphism canonical_form(const EMorphism& f) {
  std::vector<int> es = f.src.exponent_list(), fs = f.tgt.exponent_list();
  IntMatrix m = f.mat;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c)
      m.at(r, c) = floor_mod(m.at(r, c), stable_entry_modulus(f.ctx, es[static_cast<size_t>(r)],
                                                              fs[static_cast<size_t>(c)]));
  return StableMorphism{EMorphism::make(f.ctx, f.src, f.tgt, std::move(m))};
}

StableMorphism stable_identity(const Context& ctx, const FpObject& x) {
  return canonical_form(EMorphism::identity(ctx, x));
}

StableMorphism stable_zero(const Context& ctx, const FpObject& src, const FpObject& tgt) {
  return StableMorphism{EMorphism::zero(ctx, src, tgt)};
}

bool is_stably_zero(const EMorphism& f) {
  std::vector<int> es = f.src.exponent_list(), fs = f.tgt.exponent_list();
  for (int r = 0; r < f.mat.rows; ++r)
    for (int c = 0; c < f.mat.cols; ++c)
      if (floor_mod(f.mat.at(r, c), stable_entry_modulus(f.ctx, es[static_cast<size_t>(r)],
                                                         fs[static_cast<size_t>(c)])) != 0)
        return false;
  return true;
}

bool is_stably_zero(const StableMorphism& f) { return f.rep.is_zero(); }

bool stable_equal(const EMorphism& f, const EMorphism& g) {
  if (f.ctx != g.ctx || !(f.src == g.src) || !(f.tgt == g.tgt))
    throw ContractError("stable_equal: object mismatch");
  return is_stably_zero(sub(f, g));
}

StableMorphism compose(const StableMorphism& f, const StableMorphism& g) {
  return canonical_form(compose(f.rep, g.rep));
}
StableMorphism add(const StableMorphism& f, const StableMorphism& g) {
  return canonical_form(add(f.rep, g.rep));
}
StableMorphism sub(const StableMorphism& f, const StableMorphism& g) {
  return canonical_form(sub(f.rep, g.rep));
}
StableMorphism negate(const StableMorphism& f) { return canonical_form(negate(f.rep)); }
StableMorphism direct_sum(const StableMorphism& f, const StableMorphism& g) {
  return canonical_form(direct_sum(f.rep, g.rep));
}

EMorphism shift_representative(const EMorphism& f) {
  const Context& ctx = f.ctx;
  const FpObject& x = f.src;
  const FpObject& y = f.tgt;
  FpObject xs = shift_object(ctx, x);
  FpObject ys = shift_object(ctx, y);
  std::vector<int> es = x.exponent_list(), fs = y.exponent_list();
  IntMatrix m(xs.summands(), ys.summands());
  for (int r = 0; r < f.mat.rows; ++r) {
    int e = es[static_cast<size_t>(r)];
    int rcopy = r - x.index_of(e, 0);
    int rs = xs.index_of(ctx.m - e, x.mult[static_cast<size_t>(e)] - 1 - rcopy);
    for (int c = 0; c < f.mat.cols; ++c) {
      int fc = fs[static_cast<size_t>(c)];
      int ccopy = c - y.index_of(fc, 0);
      int cs = ys.index_of(ctx.m - fc, y.mult[static_cast<size_t>(fc)] - 1 - ccopy);
      Int a = f.mat.at(r, c);
      Int v;
      if (e >= fc) {
        v = checked_mul(ctx.pow(e - fc), a);
      } else {
        Int q = ctx.pow(fc - e);
        if (a % q != 0)
          throw InternalError("shift_representative: representative violates divisibility");
        v = a / q;
      }
      m.at(rs, cs) = v;
    }
  }
  return EMorphism::make(ctx, xs, ys, std::move(m));
}

StableMorphism shift_morphism(const StableMorphism& f) {
  return canonical_form(shift_representative(f.rep));
}

StableMorphism unshift_morphism(const StableMorphism& f) {
  // The shift is a strict involution under these conventions.
  return shift_morphism(f);
}

StableHomSet::StableHomSet(const Context& ctx, FpObject x, FpObject y, std::uint64_t cap)
    : ctx_(ctx), x_(std::move(x)), y_(std::move(y)) {
  std::vector<int> es = x_.exponent_list(), fs = y_.exponent_list();
  entry_mod_.reserve(es.size() * fs.size());
  for (int e : es)
    for (int f : fs) {
      // Canonical representatives are multiples of p^{max(0, f-e)} below the
      // stable-zero modulus.
      int cnt_exp = std::min(ctx_.m - e, f) - std::max(0, f - e);
      Int cnt = cnt_exp > 0 ? ctx_.pow(cnt_exp) : 1;
      entry_mod_.push_back(cnt);
      if (cnt > 1) {
        if (size_ > cap / static_cast<std::uint64_t>(cnt))
          throw EnumTooLargeError("stable hom-set too large to enumerate: hom(" +
                                  to_string(ctx_, x_) + ", " + to_string(ctx_, y_) + ")");
        size_ *= static_cast<std::uint64_t>(cnt);
      }
    }
}

StableMorphism StableHomSet::at(std::uint64_t idx) const {
  if (idx >= size_) throw ContractError("StableHomSet::at: index out of range");
  std::vector<int> es = x_.exponent_list(), fs = y_.exponent_list();
  IntMatrix m(x_.summands(), y_.summands());
  size_t s = 0;
  for (int r = 0; r < m.rows; ++r)
    for (int c = 0; c < m.cols; ++c, ++s) {
      std::uint64_t cnt = static_cast<std::uint64_t>(entry_mod_[s]);
      std::uint64_t t = idx % cnt;
      idx /= cnt;
      Int step = ctx_.pow(std::max(0, fs[static_cast<size_t>(c)] - es[static_cast<size_t>(r)]));
      m.at(r, c) = checked_mul(step, static_cast<Int>(t));
    }
  return StableMorphism{EMorphism::make(ctx_, x_, y_, std::move(m))};
}

std::optional<StableMorphism> stable_inverse(const StableMorphism& f, std::uint64_t cap) {
  StableHomSet back(f.ctx(), f.tgt(), f.src(), cap);
  StableMorphism idx = stable_identity(f.ctx(), f.src());
  StableMorphism idy = stable_identity(f.ctx(), f.tgt());
  for (std::uint64_t i = 0; i < back.size(); ++i) {
    StableMorphism g = back.at(i);
    if (compose(f, g) == idx && compose(g, f) == idy) return g;
  }
  return std::nullopt;
}

bool is_stable_iso(const StableMorphism& f) {
  const Context& ctx = f.ctx();
  for (int i = 1; i < ctx.m; ++i)
    if (f.src().mult[static_cast<size_t>(i)] != f.tgt().mult[static_cast<size_t>(i)]) return false;
  // f is invertible iff its cone vanishes stably.
  return is_bijective(ctx, cone(f).z);
}

Triangle cone(const StableMorphism& f) {
  const Context& ctx = f.ctx();
  DistinguishedSes ses = distinguished_ses(ctx, f.src());
  EMorphism u = pair_into_sum(ses.mono, negate(f.rep));  // X -> B(+)Y
  Cokernel ck = cokernel(u);

  DirectSum by = direct_sum(ctx, ses.middle, f.tgt());
  // g: Y >-> B(+)Y ->> Z
  IntMatrix incl(f.tgt().summands(), by.object.summands());
  for (int r = 0; r < incl.rows; ++r) incl.at(r, by.right_index[static_cast<size_t>(r)]) = 1;
  EMorphism g = compose(EMorphism::make(ctx, f.tgt(), by.object, std::move(incl)), ck.proj);

  // h: Z -> X^{+1}, induced by (epi on B, 0 on Y).
  IntMatrix s(by.object.summands(), ses.shifted.summands());
  for (int r = 0; r < ses.epi.mat.rows; ++r)
    for (int c = 0; c < ses.epi.mat.cols; ++c)
      s.at(by.left_index[static_cast<size_t>(r)], c) = ses.epi.mat.at(r, c);
  EMorphism h = induced_from_cokernel(ck, EMorphism::make(ctx, by.object, ses.shifted, std::move(s)));

  return Triangle{ctx, f.src(), f.tgt(), ck.object, f, canonical_form(g), canonical_form(h)};
}

namespace {

void check_triangle_shape(const Triangle& t) {
  if (!(t.f.src() == t.x) || !(t.f.tgt() == t.y) || !(t.g.src() == t.y) || !(t.g.tgt() == t.z) ||
      !(t.h.src() == t.z) || !(t.h.tgt() == shift_object(t.ctx, t.x)))
    throw ContractError("triangle: maps do not match objects");
}

}  // namespace

DistinguishedReport is_distinguished_report(const Triangle& t) {
  check_triangle_shape(t);
  DistinguishedReport rep;
  if (!is_stably_zero(compose(t.f, t.g))) {
    rep.reason = "f.g does not vanish stably";
    return rep;
  }
  if (!is_stably_zero(compose(t.g, t.h))) {
    rep.reason = "g.h does not vanish stably";
    return rep;
  }
  if (!is_stably_zero(compose(t.h, shift_morphism(t.f)))) {
    rep.reason = "h.f^{+1} does not vanish stably";
    return rep;
  }

  auto solved = find_fill_in_by_solving(t);

  // Cross-check with the enumeration oracle on small hom-sets.
  constexpr std::uint64_t kEnumThreshold = 100000;
  bool enum_ran = false;
  std::optional<StableMorphism> enumerated;
  try {
    enumerated = find_iso_fill_in_by_enumeration(t, kEnumThreshold);
    enum_ran = true;
  } catch (const EnumTooLargeError&) {
  }

  bool verdict = solved.has_value() && is_stable_iso(*solved);
  if (enum_ran && verdict != enumerated.has_value())
    throw InternalError("is_distinguished: solver path and enumeration oracle disagree");

  if (!solved) {
    rep.reason = "no fill-in onto the cone triangle exists";
    return rep;
  }
  if (!verdict) {
    rep.reason = "fill-in exists but is not a stable isomorphism";
    return rep;
  }
  rep.distinguished = true;
  rep.fill_in = enum_ran ? enumerated : solved;
  return rep;
}

bool is_distinguished(const Triangle& t) { return is_distinguished_report(t).distinguished; }

std::optional<StableMorphism> find_iso_fill_in_by_enumeration(const Triangle& t,
                                                              std::uint64_t cap) {
  Triangle c = cone(t.f);
  StableHomSet homs(t.ctx, c.z, t.z, cap);
  for (std::uint64_t i = 0; i < homs.size(); ++i) {
    StableMorphism w = homs.at(i);
    if (!(compose(c.g, w) == t.g)) continue;
    if (!(compose(w, t.h) == c.h)) continue;
    if (is_stable_iso(w)) return w;
  }
  return std::nullopt;
}

std::optional<StableMorphism> find_fill_in_by_solving(const Triangle& t) {
  const Context& ctx = t.ctx;
  Triangle c = cone(t.f);
  std::vector<int> cz = c.z.exponent_list();
  std::vector<int> tz = t.z.exponent_list();
  std::vector<int> ys = t.y.exponent_list();
  FpObject xs = shift_object(ctx, t.x);
  std::vector<int> x1 = xs.exponent_list();

  int nu = static_cast<int>(cz.size() * tz.size());
  int neq = static_cast<int>(ys.size() * tz.size() + cz.size() * x1.size());
  Int pm = ctx.pow(ctx.m);
  IntMatrix sys(neq, nu);
  IntMatrix rhs(neq, 1);
  auto unk = [&](size_t r, size_t cc) { return static_cast<int>(r * tz.size() + cc); };
  auto alpha = [&](size_t r, size_t cc) {
    return ctx.pow(std::max(0, tz[cc] - cz[r]));
  };

  int eq = 0;
  // Square 1: cone.g * w == t.g stably.
  for (size_t i = 0; i < ys.size(); ++i)
    for (size_t cc = 0; cc < tz.size(); ++cc, ++eq) {
      Int mod = stable_entry_modulus(ctx, ys[i], tz[cc]);
      Int scale = pm / mod;
      for (size_t r = 0; r < cz.size(); ++r)
        sys.at(eq, unk(r, cc)) = floor_mod(
            checked_mul(scale, checked_mul(c.g.rep.mat.at(static_cast<int>(i), static_cast<int>(r)),
                                           alpha(r, cc))),
            pm);
      rhs.at(eq, 0) =
          floor_mod(checked_mul(scale, t.g.rep.mat.at(static_cast<int>(i), static_cast<int>(cc))), pm);
    }
  // Square 2: w * t.h == cone.h stably.
  for (size_t r = 0; r < cz.size(); ++r)
    for (size_t j = 0; j < x1.size(); ++j, ++eq) {
      Int mod = stable_entry_modulus(ctx, cz[r], x1[j]);
      Int scale = pm / mod;
      for (size_t cc = 0; cc < tz.size(); ++cc)
        sys.at(eq, unk(r, cc)) = floor_mod(
            checked_mul(scale, checked_mul(alpha(r, cc),
                                           t.h.rep.mat.at(static_cast<int>(cc), static_cast<int>(j)))),
            pm);
      rhs.at(eq, 0) =
          floor_mod(checked_mul(scale, c.h.rep.mat.at(static_cast<int>(r), static_cast<int>(j))), pm);
    }

  auto sol = solve_matrix_congruence(sys, rhs, {pm});
  if (!sol) return std::nullopt;

  IntMatrix w(static_cast<int>(cz.size()), static_cast<int>(tz.size()));
  for (size_t r = 0; r < cz.size(); ++r)
    for (size_t cc = 0; cc < tz.size(); ++cc)
      w.at(static_cast<int>(r), static_cast<int>(cc)) =
          checked_mul(alpha(r, cc), sol->at(unk(r, cc), 0));
  StableMorphism out = canonical_form(EMorphism::make(ctx, c.z, t.z, std::move(w)));
  if (!(compose(c.g, out) == t.g) || !(compose(out, t.h) == c.h))
    throw InternalError("find_fill_in_by_solving: solution failed the square re-check");
  return out;
}

Triangle triangle_direct_sum(const Triangle& a, const Triangle& b) {
  if (a.ctx != b.ctx) throw ContractError("triangle_direct_sum: context mismatch");
  check_triangle_shape(a);
  check_triangle_shape(b);
  return Triangle{a.ctx,
                  direct_sum(a.ctx, a.x, b.x).object,
                  direct_sum(a.ctx, a.y, b.y).object,
                  direct_sum(a.ctx, a.z, b.z).object,
                  direct_sum(a.f, b.f),
                  direct_sum(a.g, b.g),
                  direct_sum(a.h, b.h)};
}

bool triangles_equal(const Triangle& a, const Triangle& b) {
  return a.ctx == b.ctx && a.x == b.x && a.y == b.y && a.z == b.z && a.f == b.f && a.g == b.g &&
         a.h == b.h;
}

}  // namespace octa
