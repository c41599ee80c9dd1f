#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubetool/complex.hpp"

namespace cubetool {

using ComplexPtr = std::shared_ptr<const CubeComplex>;

struct CubeImage {
  CubeIndex cube = -1;
  CornerMap corners;  // domain cube corner -> image cube corner
};

// Serialized form. `collapses` lists collapsed domain axes. `axes` gives, for
// the kept axes in order, k for codomain axis k or ~k for it reflected. Cubes
// missing from `axes` get the first frame consistent with vertex images and
// the frames of their faces.
struct CubicalMapDescription {
  std::string domain;
  std::string codomain;
  std::map<std::string, std::string> cube_images;
  std::map<std::string, std::vector<int>> collapses;
  std::map<std::string, std::vector<int>> axes;
};

inline constexpr int kCollapsed = std::numeric_limits<int>::min();

class CubicalMap {
 public:
  // Throws Error{kMalformedMap}.
  static CubicalMap derive(ComplexPtr domain, ComplexPtr codomain, const CubicalMapDescription& d);
  static CubicalMap from_images(ComplexPtr domain, ComplexPtr codomain, std::vector<CubeImage> images);
  // Cubes are matched to codomain cubes of equal dimension by corner images.
  static CubicalMap from_vertex_map(ComplexPtr domain, ComplexPtr codomain,
                                    const std::map<std::string, std::string>& vertex_images);
  static CubicalMap identity(ComplexPtr x);

  const CubeComplex& domain() const { return *domain_; }
  const CubeComplex& codomain() const { return *codomain_; }
  const ComplexPtr& domain_ptr() const { return domain_; }
  const ComplexPtr& codomain_ptr() const { return codomain_; }

  CubeIndex image(CubeIndex c) const { return images_[static_cast<std::size_t>(c)].cube; }
  const CornerMap& corners(CubeIndex c) const { return images_[static_cast<std::size_t>(c)].corners; }
  const std::vector<CubeImage>& images() const { return images_; }
  // kCollapsed, or the codomain axis code of domain axis `axis` of c.
  int axis_image(CubeIndex c, int axis) const;
  bool dimension_preserving() const;

  CubicalMapDescription description() const;

 private:
  CubicalMap(ComplexPtr d, ComplexPtr c) : domain_(std::move(d)), codomain_(std::move(c)) {}
  ComplexPtr domain_;
  ComplexPtr codomain_;
  std::vector<CubeImage> images_;
};

// g after f.
CubicalMap compose(const CubicalMap& f, const CubicalMap& g);
// Empty when equal cell by cell; otherwise the first differing cube.
std::optional<std::string> cell_difference(const CubicalMap& f, const CubicalMap& g);

struct MapVerdict {
  bool ok = true;
  std::string vertex;
  std::string reason;
  std::vector<std::string> simplex;  // edge-ends rendered "edge:end"
};

// Throws Error{kNotDimensionPreserving}.
MapVerdict is_local_isometry(const CubicalMap& f);

struct CoveringReport {
  int degree = -1;                  // common fiber size, -1 when components differ
  std::vector<int> component_degrees;  // per codomain component, ordered by least vertex
};

// Throws Error{kNotCovering} with the witness vertex in details.
CoveringReport verify_covering(const CubicalMap& p);

// Image of the link of v: link vertex index -> codomain link vertex index,
// and domain simplex -> codomain simplex.
struct LinkImage {
  VertexLink domain_link;
  VertexLink codomain_link;
  std::vector<int> vertex_map;
  std::vector<int> simplex_map;
};
LinkImage link_image(const CubicalMap& f, CubeIndex v);

std::string edge_end_string(const CubeComplex& x, const EdgeEnd& e);

}  // namespace cubetool
