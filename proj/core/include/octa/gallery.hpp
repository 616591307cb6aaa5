#pragma once

#include <optional>
#include <string>

#include "octa/diagram.hpp"
#include "octa/iso_search.hpp"

namespace octa {

enum class GalleryName { Y, X, Xtilde, OctX, OctXtilde };

std::optional<GalleryName> gallery_name_from_string(const std::string& s);
std::string to_string(GalleryName name);

/// Key into the diagram gallery; the ambient context is always m = 2n.
/// OctX/OctXtilde are the n = 3 specializations.
struct GalleryKey {
  GalleryName name;
  int n;
  Int p;
};

/// The staircase (2n-1)-strip diagram with entries Z/p^{j-i}, horizontal maps
/// p (last column -p from the second row up), vertical maps 1, and the corner
/// sign pattern (p, 1, -p, -1). E-level, with Z/p^{2n} at 0^{+1}/0; passes the box property and
/// standardises with trivial tau.
EDiagram gen_Y(int n, Int p);

/// Stable image of gen_Y as a periodic diagram on the (2n-1)-strip.
PeriodicDiagram gen_Y_stable(int n, Int p);

/// The n-strip diagram X: bottom row Z/p^n with maps p, inner objects
/// Z/p^{j-i} (+) Z/p^{2n-j+i}, horizontal [[p,0],[0,1]], vertical [[1,0],[0,p]],
/// last-column maps (-p^i, 1), column verticals p.
PeriodicDiagram gen_X(int n, Int p);

/// Same base as gen_X; differs only in the two maps carrying p^{n-3}:
/// (n-1)/1 -> n/1 is [[p,0],[p^{n-3},1]] and n/1 -> n/2 is [[1,0],[-p^{n-3},p]].
PeriodicDiagram gen_Xtilde(int n, Int p);

/// The explicit isomorphism restrict(X,k) -> restrict(Xtilde,k): identity for
/// k in {1, n}; [[1,0],[p^{n-3},1]] at (n-1)/0 for k = 0; families
/// [[1,0],[-p^{j-1-i},1]] for k in [2, n-1].
DiagramIso explicit_witness_iso(int k, int n, Int p);

PeriodicDiagram gallery_diagram(const GalleryKey& key);

}  // namespace octa
