#ifndef PARACR_VARSPACE_HPP
#define PARACR_VARSPACE_HPP

#include <memory>
#include <string>
#include <vector>

#include "paracr/errors.hpp"

namespace paracr {

enum class VarRole { variable, parameter, transversal, jet };

// An ordered list of named coordinates. Every Series holds a pointer to the
// space it lives in; the order is fixed for the lifetime of the space.
class VarSpace {
public:
    static std::shared_ptr<const VarSpace> make(std::vector<std::string> names,
                                                std::vector<VarRole> roles);

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[i]; }
    VarRole role(int i) const { return roles_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    // -1 when absent.
    int index_of(const std::string& name) const;
    int require(const std::string& name) const;

    bool same_as(const VarSpace& o) const { return names_ == o.names_; }

private:
    VarSpace(std::vector<std::string> names, std::vector<VarRole> roles)
        : names_(std::move(names)), roles_(std::move(roles)) {}
    std::vector<std::string> names_;
    std::vector<VarRole> roles_;
};

using SpacePtr = std::shared_ptr<const VarSpace>;

// --- naming conventions for model coordinates ---
//
// variables:   n=1 -> {x},  n=2 -> {x,y},  n>=3 -> {x1..xn}
// var transversal: z when n=2, else y
// parameters:  m=1 -> {a},  m=2 -> {a,b},  m>=3 -> {a1..am}
// par transversal: c when m=2, else b
std::vector<std::string> variable_names(int n);
std::vector<std::string> parameter_names(int m);
std::string var_transversal_name(int n);
std::string par_transversal_name(int m);

// (x..., a..., b) - the home of Q
SpacePtr q_space(int n, int m);
// (a..., x..., y) - the home of P
SpacePtr p_space(int n, int m);
// (x..., y, a..., b) - ambient coordinates, the home of implicit R
SpacePtr full_space(int n, int m);

// (x, y, z, z_x, z_xx) - second-order jet coordinates for n = m = 2
SpacePtr jet_space_22();
// (a, b, c, c_a, c_aa) - the dual jet coordinates
SpacePtr dual_jet_space_22();
// (x, y, y_x, ..., y_{x^order}) for the 1-D prolongation machinery
SpacePtr jet1d_space(int order);
// (x, y) source space of a plane map germ
SpacePtr plane_space();

}  // namespace paracr

#endif
