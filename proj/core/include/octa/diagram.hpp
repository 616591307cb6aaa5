#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "octa/stable_category.hpp"

namespace octa {

/// Position beta/alpha of the periodic strip, encoded as plain integers
/// (a = alpha = lower index, b = beta = upper index) with the layer folded in:
/// translating by n+1 moves one period. Strip condition: a <= b <= a + (n+1).
struct Position {
  int a = 0;
  int b = 0;
  bool operator==(const Position&) const = default;
};

std::string pos_string(int n, Position p);

bool in_strip(int n, Position p);
/// Fundamental triangle: 0 <= a <= b <= n+1 (b = n+1 prints as 0^{+1}).
bool in_triangle(int n, Position p);

/// A periodic diagram on the strip, stored on the fundamental triangle.
/// Out-of-domain positions are resolved by iterating the poset shift
/// beta/alpha -> alpha^{+1}/beta, one object shift per application; a
/// full-period translation is its square and carries no net shift.
///
/// Invariants (checked by validate_structure):
///  - objects at a/a (0 <= a <= n+1) and at 0^{+1}/0 are zero;
///  - object at 0^{+1}/i equals the shift of the object at i/0, and the
///    rightmost-column unit steps equal the shifts of the bottom-row steps;
///  - every unit cell commutes stably.
struct PeriodicDiagram {
  Context ctx;
  int n = 0;
  // objects[a][b] for 0 <= a <= b <= n+1.
  std::vector<std::vector<FpObject>> objects;
  // right[a][b]: (a,b) -> (a,b+1), for a <= b <= n.
  std::vector<std::vector<StableMorphism>> right;
  // up[a][b]: (a,b) -> (a+1,b), for a < b <= n+1.
  std::vector<std::vector<StableMorphism>> up;

  static PeriodicDiagram empty(const Context& ctx, int n);

  const FpObject& triangle_object(int a, int b) const { return objects[static_cast<size_t>(a)][static_cast<size_t>(b)]; }

  FpObject object_at(Position p) const;
  /// Composite of unit steps along a monotone staircase from p to q (p <= q
  /// componentwise). Well defined on valid diagrams since all cells commute.
  StableMorphism arrow(Position p, Position q) const;
  StableMorphism unit_right(Position p) const;
  StableMorphism unit_up(Position p) const;

  /// First violated invariant with its position, or nullopt if valid.
  std::optional<std::string> validate_structure() const;

  bool operator==(const PeriodicDiagram&) const = default;
};

/// Weak square test for the quadrangle b: A->B, c: A->C, d: B->D, e: C->D:
/// the diagonal composite A -> B(+)C -> D vanishes stably, and for every
/// indecomposable test object T = Z/p^t (1 <= t <= m-1) maps into B(+)C killed
/// by (d,-e)^T factor stably through (b,c), and dually for maps out of B(+)C.
bool is_weak_square(const StableMorphism& b, const StableMorphism& c, const StableMorphism& d,
                    const StableMorphism& e);

struct CheckReport {
  bool ok = true;
  std::string reason;
};

CheckReport is_periodic_pretriangle_report(const PeriodicDiagram& d);
bool is_periodic_pretriangle(const PeriodicDiagram& d);

/// Restriction along the periodic monotone injection onto [0,n] \ {k}.
PeriodicDiagram restrict_diagram(const PeriodicDiagram& d, int k);

/// The triangle carried by a diagram on the 2-strip.
Triangle triangle_of(const PeriodicDiagram& d);

/// n = 3 only: pretriangle whose four 2-dimensional restrictions are
/// distinguished triangles.
bool is_verdier_octahedron(const PeriodicDiagram& d);
CheckReport is_verdier_octahedron_report(const PeriodicDiagram& d);

/// The two extra triangles an octahedron carries: direct sums of the
/// non-diagonal terms of the subsequent quadrangle, one minus sign inserted
/// (on the 3/0 component of the first map, resp. the 0^{+1}/1 component of
/// the middle map).
std::pair<Triangle, Triangle> bbd_extra_triangles(const PeriodicDiagram& d);

/// An E-level diagram on the fundamental triangle (objects and exact maps,
/// no stable reduction). Used as input to the column standardisation.
struct EDiagram {
  Context ctx;
  int n = 0;
  std::vector<std::vector<FpObject>> objects;
  std::vector<std::vector<EMorphism>> right;
  std::vector<std::vector<EMorphism>> up;

  static EDiagram empty(const Context& ctx, int n);
  const FpObject& object(int a, int b) const { return objects[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  EMorphism arrow(Position p, Position q) const;
};

/// Box property: bijective objects on the diagonal and at 0^{+1}/0, every
/// unit cell a pure square. Returns the first failing square.
std::optional<std::string> box_check(const EDiagram& d);

/// Stable image of an E-level diagram: bijective diagonal entries and
/// 0^{+1}/0 written as zero, all maps canonicalized.
PeriodicDiagram stable_image(const EDiagram& d);

struct StandardizeResult {
  PeriodicDiagram diagram;
  std::vector<StableMorphism> tau;  // tau[i-1]: X_{0^{+1}/i} -> (X_{i/0})^{+1}
};

/// Column standardisation: for each i the pure SES
/// X_{i/0} >-> X_{i/i} (+) X_{0^{+1}/0} ->> X_{0^{+1}/i} is compared with the
/// distinguished SES of X_{i/0} by extension along the mono; the rightmost
/// column is replaced accordingly. Already-distinguished columns pass through
/// unchanged.
StandardizeResult standardize_column(const EDiagram& d);

}  // namespace octa
