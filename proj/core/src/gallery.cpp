#include "octa/gallery.hpp"

#include "octa/errors.hpp"

namespace octa {

std::optional<GalleryName> gallery_name_from_string(const std::string& s) {
  if (s == "Y") return GalleryName::Y;
  if (s == "X") return GalleryName::X;
  if (s == "Xtilde") return GalleryName::Xtilde;
  if (s == "OctX") return GalleryName::OctX;
  if (s == "OctXtilde") return GalleryName::OctXtilde;
  return std::nullopt;
}

std::string to_string(GalleryName name) {
  switch (name) {
    case GalleryName::Y: return "Y";
    case GalleryName::X: return "X";
    case GalleryName::Xtilde: return "Xtilde";
    case GalleryName::OctX: return "OctX";
    case GalleryName::OctXtilde: return "OctXtilde";
  }
  return "?";
}

namespace {

void require_params(int n, Int p) {
  if (n < 3) throw ContractError("gallery: n must be >= 3");
  Context probe(p, 2 * n);  // validates p prime and p^{2n} within cap
  (void)probe;
}

IntMatrix m1x1(Int a) {
  IntMatrix m(1, 1);
  m.at(0, 0) = a;
  return m;
}
IntMatrix m1x2(Int a, Int b) {
  IntMatrix m(1, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  return m;
}
IntMatrix m2x1(Int a, Int b) {
  IntMatrix m(2, 1);
  m.at(0, 0) = a;
  m.at(1, 0) = b;
  return m;
}
IntMatrix m2x2(Int a, Int b, Int c, Int d) {
  IntMatrix m(2, 2);
  m.at(0, 0) = a;
  m.at(0, 1) = b;
  m.at(1, 0) = c;
  m.at(1, 1) = d;
  return m;
}

// Shared scaffold of X and Xtilde.
PeriodicDiagram gen_x_base(int n, Int p, bool tilde) {
  require_params(n, p);
  Context ctx(p, 2 * n);
  PeriodicDiagram d = PeriodicDiagram::empty(ctx, n);

  FpObject bottom = FpObject::from_exponents(ctx, {n});
  auto inner = [&](int i, int j) {
    return FpObject::from_exponents(ctx, {j - i, 2 * n - j + i});
  };

  for (int j = 1; j <= n; ++j) d.objects[0][static_cast<size_t>(j)] = bottom;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) d.objects[static_cast<size_t>(i)][static_cast<size_t>(j)] = inner(i, j);
  for (int i = 1; i <= n; ++i)
    d.objects[static_cast<size_t>(i)][static_cast<size_t>(n + 1)] = shift_object(ctx, bottom);

  auto obj = [&](int a, int b) -> const FpObject& {
    return d.objects[static_cast<size_t>(a)][static_cast<size_t>(b)];
  };
  auto set_right = [&](int a, int b, IntMatrix m) {
    d.right[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        canonical_form(EMorphism::make(ctx, obj(a, b), obj(a, b + 1), std::move(m)));
  };
  auto set_up = [&](int a, int b, IntMatrix m) {
    d.up[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        canonical_form(EMorphism::make(ctx, obj(a, b), obj(a + 1, b), std::move(m)));
  };
  auto zero_right = [&](int a, int b) {
    d.right[static_cast<size_t>(a)][static_cast<size_t>(b)] = stable_zero(ctx, obj(a, b), obj(a, b + 1));
  };
  auto zero_up = [&](int a, int b) {
    d.up[static_cast<size_t>(a)][static_cast<size_t>(b)] = stable_zero(ctx, obj(a, b), obj(a + 1, b));
  };

  // Bottom row.
  for (int j = 1; j <= n - 1; ++j) set_right(0, j, m1x1(p));
  zero_right(0, n);
  for (int a = 0; a <= n; ++a) zero_right(a, a);
  for (int j = 2; j <= n; ++j) set_up(0, j, m1x2(1, ctx.pow(n - j + 1)));
  zero_up(0, 1);

  // Inner cells.
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n - 1; ++j) set_right(i, j, m2x2(p, 0, 0, 1));
  for (int i = 1; i <= n - 1; ++i) set_right(i, n, m2x1(-ctx.pow(i), 1));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 2; j <= n; ++j) set_up(i, j, m2x2(1, 0, 0, p));
  for (int j = 2; j <= n + 1; ++j) zero_up(j - 1, j);

  // Rightmost column: shifts of the bottom row.
  zero_up(0, n + 1);
  for (int i = 1; i <= n - 1; ++i) set_up(i, n + 1, m1x1(p));
  zero_up(n, n + 1);

  if (tilde) {
    // The two maps carrying p^{n-3}.
    set_right(1, n - 1, m2x2(p, 0, ctx.pow(n - 3), 1));
    set_up(1, n, m2x2(1, 0, -ctx.pow(n - 3), p));
  }

  if (auto err = d.validate_structure())
    throw InternalError("gen_X: generated diagram failed validation: " + *err);
  return d;
}

}  // namespace

PeriodicDiagram gen_X(int n, Int p) { return gen_x_base(n, p, false); }
PeriodicDiagram gen_Xtilde(int n, Int p) { return gen_x_base(n, p, true); }

EDiagram gen_Y(int n, Int p) {
  require_params(n, p);
  Context ctx(p, 2 * n);
  int nn = 2 * n - 1;  // the diagram lives on the (2n-1)-strip
  EDiagram d = EDiagram::empty(ctx, nn);

  for (int j = 1; j <= nn; ++j) d.objects[0][static_cast<size_t>(j)] = FpObject::from_exponents(ctx, {j});
  for (int i = 1; i <= nn; ++i)
    for (int j = i + 1; j <= nn; ++j)
      d.objects[static_cast<size_t>(i)][static_cast<size_t>(j)] = FpObject::from_exponents(ctx, {j - i});
  d.objects[0][static_cast<size_t>(nn + 1)] = FpObject::from_exponents(ctx, {2 * n});
  for (int i = 1; i <= nn; ++i)
    d.objects[static_cast<size_t>(i)][static_cast<size_t>(nn + 1)] =
        FpObject::from_exponents(ctx, {2 * n - i});

  auto obj = [&](int a, int b) -> const FpObject& {
    return d.objects[static_cast<size_t>(a)][static_cast<size_t>(b)];
  };
  auto set_right = [&](int a, int b, Int v) {
    IntMatrix m(obj(a, b).summands(), obj(a, b + 1).summands());
    if (m.rows == 1 && m.cols == 1) m.at(0, 0) = v;
    d.right[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        EMorphism::make(ctx, obj(a, b), obj(a, b + 1), std::move(m));
  };
  auto set_up = [&](int a, int b, Int v) {
    IntMatrix m(obj(a, b).summands(), obj(a + 1, b).summands());
    if (m.rows == 1 && m.cols == 1) m.at(0, 0) = v;
    d.up[static_cast<size_t>(a)][static_cast<size_t>(b)] =
        EMorphism::make(ctx, obj(a, b), obj(a + 1, b), std::move(m));
  };

  for (int a = 0; a <= nn; ++a) set_right(a, a, 0);
  for (int j = 1; j <= nn - 1; ++j) set_right(0, j, p);
  set_right(0, nn, p);
  for (int i = 1; i <= nn; ++i)
    for (int j = i + 1; j <= nn - 1; ++j) set_right(i, j, p);
  for (int i = 1; i <= nn - 1; ++i) set_right(i, nn, -p);

  for (int j = 2; j <= nn; ++j) set_up(0, j, 1);
  set_up(0, 1, 0);
  for (int i = 1; i <= nn; ++i)
    for (int j = i + 2; j <= nn; ++j) set_up(i, j, 1);
  for (int j = 2; j <= nn + 1; ++j) set_up(j - 1, j, 0);
  set_up(0, nn + 1, -1);
  for (int i = 1; i <= nn - 1; ++i) set_up(i, nn + 1, 1);

  if (auto err = box_check(d)) throw InternalError("gen_Y: box property failed: " + *err);
  return d;
}

PeriodicDiagram gen_Y_stable(int n, Int p) {
  PeriodicDiagram d = stable_image(gen_Y(n, p));
  if (auto err = d.validate_structure())
    throw InternalError("gen_Y_stable: stable image failed validation: " + *err);
  return d;
}

DiagramIso explicit_witness_iso(int k, int n, Int p) {
  require_params(n, p);
  if (k < 0 || k > n) throw ContractError("explicit_witness_iso: k out of [0, n]");
  Context ctx(p, 2 * n);
  PeriodicDiagram r = restrict_diagram(gen_X(n, p), k);
  int nn = n - 1;

  DiagramIso iso;
  iso.n = nn;
  size_t g = static_cast<size_t>(nn) + 2;
  FpObject zero = FpObject::zero(ctx);
  iso.components.assign(g, std::vector<StableMorphism>(g, stable_zero(ctx, zero, zero)));
  for (int a = 0; a <= nn; ++a)
    for (int b = a + 1; b <= nn; ++b)
      iso.components[static_cast<size_t>(a)][static_cast<size_t>(b)] =
          stable_identity(ctx, r.triangle_object(a, b));

  auto set_comp = [&](int a, int b, IntMatrix m) {
    iso.components[static_cast<size_t>(a)][static_cast<size_t>(b)] = canonical_form(
        EMorphism::make(ctx, r.triangle_object(a, b), r.triangle_object(a, b), std::move(m)));
  };

  if (k == 0) {
    // [[1,0],[p^{n-3},1]] at (n-1)/0, identity elsewhere.
    IntMatrix m = IntMatrix::identity(2);
    m.at(1, 0) = ctx.pow(n - 3);
    set_comp(0, nn, std::move(m));
  } else if (k >= 2 && k <= n - 1) {
    for (int i = 1; i <= k - 1; ++i)
      for (int j = k; j <= n - 1; ++j) {
        if (j == n - 1 && i == 1) continue;  // identity at (n-1)/1
        IntMatrix m = IntMatrix::identity(2);
        m.at(1, 0) = -ctx.pow(j - 1 - i);
        set_comp(i, j, std::move(m));
      }
  }
  return iso;
}

PeriodicDiagram gallery_diagram(const GalleryKey& key) {
  if ((key.name == GalleryName::OctX || key.name == GalleryName::OctXtilde) && key.n != 3)
    throw ContractError("gallery: OctX/OctXtilde require n = 3");
  switch (key.name) {
    case GalleryName::Y: return gen_Y_stable(key.n, key.p);
    case GalleryName::X:
    case GalleryName::OctX: return gen_X(key.n, key.p);
    case GalleryName::Xtilde:
    case GalleryName::OctXtilde: return gen_Xtilde(key.n, key.p);
  }
  throw ContractError("gallery: unknown name");
}

}  // namespace octa
