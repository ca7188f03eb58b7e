#ifndef KONTACT_REGISTRY_HPP
#define KONTACT_REGISTRY_HPP

#include <string>
#include <vector>

#include "kontact/structure.hpp"

namespace kontact {

/// Standard Sasakian structure on R^{2n+1}:
/// eta = (dz - sum y^i dx^i)/2, xi = 2 d/dz, the kappa = 1 control case.
ContactMetricStructure darboux_sasakian(int n);

/// The weakly-(0,0) chart structure on R^{2n+1} sharing eta and xi with the
/// Sasakian one but with the z-mixed block metric; weakly but (for n >= 2)
/// not strongly (0,0).
ContactMetricStructure darboux_weak(int n);

/// Left-invariant 3D family; see lie_family_model.
ContactMetricStructure lie_family(double c1, double c2);

/// Resolve a builtin name: darboux-sasakian-n<k>, darboux-weak-n<k>,
/// lie(c1,c2); an optional suffix "@a=<real>" applies a deformation.
ContactMetricStructure builtin_structure(const std::string& name);

/// Names accepted verbatim by builtin_structure (the parametric forms
/// lie(...) and @a= suffixes are additional).
std::vector<std::string> builtin_names();

/// Load / save the line-oriented key=value structure format (.kmu).
/// strict = true verifies the axioms on the declared sample set after load.
ContactMetricStructure load_spec(const std::string& path, bool strict = true);
void save_spec(const ContactMetricStructure& s, const std::string& path);

/// In-memory variants of the same format (used by load_spec/save_spec).
ContactMetricStructure parse_spec_text(const std::string& text, bool strict = true);
std::string render_spec_text(const ContactMetricStructure& s);

} // namespace kontact

#endif
