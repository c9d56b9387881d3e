#include "paracr/varspace.hpp"

#include <set>

namespace paracr {

SpacePtr VarSpace::make(std::vector<std::string> names, std::vector<VarRole> roles) {
    if (names.size() != roles.size()) throw Error("VarSpace: names/roles size mismatch");
    std::set<std::string> seen;
    for (const auto& n : names)
        if (!seen.insert(n).second) throw Error("VarSpace: duplicate variable '" + n + "'");
    return std::shared_ptr<const VarSpace>(new VarSpace(std::move(names), std::move(roles)));
}

int VarSpace::index_of(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (names_[i] == name) return i;
    return -1;
}

int VarSpace::require(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw UnknownVariable("'" + name + "' not in space");
    return i;
}

std::vector<std::string> variable_names(int n) {
    if (n == 1) return {"x"};
    if (n == 2) return {"x", "y"};
    std::vector<std::string> v;
    for (int i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
    return v;
}

std::vector<std::string> parameter_names(int m) {
    if (m == 1) return {"a"};
    if (m == 2) return {"a", "b"};
    std::vector<std::string> v;
    for (int i = 1; i <= m; ++i) v.push_back("a" + std::to_string(i));
    return v;
}

std::string var_transversal_name(int n) { return n == 2 ? "z" : "y"; }
std::string par_transversal_name(int m) { return m == 2 ? "c" : "b"; }

SpacePtr q_space(int n, int m) {
    std::vector<std::string> names = variable_names(n);
    std::vector<VarRole> roles(names.size(), VarRole::variable);
    for (const auto& a : parameter_names(m)) {
        names.push_back(a);
        roles.push_back(VarRole::parameter);
    }
    names.push_back(par_transversal_name(m));
    roles.push_back(VarRole::transversal);
    return VarSpace::make(std::move(names), std::move(roles));
}

SpacePtr p_space(int n, int m) {
    std::vector<std::string> names = parameter_names(m);
    std::vector<VarRole> roles(names.size(), VarRole::parameter);
    for (const auto& x : variable_names(n)) {
        names.push_back(x);
        roles.push_back(VarRole::variable);
    }
    names.push_back(var_transversal_name(n));
    roles.push_back(VarRole::transversal);
    return VarSpace::make(std::move(names), std::move(roles));
}

SpacePtr full_space(int n, int m) {
    std::vector<std::string> names = variable_names(n);
    std::vector<VarRole> roles(names.size(), VarRole::variable);
    names.push_back(var_transversal_name(n));
    roles.push_back(VarRole::transversal);
    for (const auto& a : parameter_names(m)) {
        names.push_back(a);
        roles.push_back(VarRole::parameter);
    }
    names.push_back(par_transversal_name(m));
    roles.push_back(VarRole::transversal);
    return VarSpace::make(std::move(names), std::move(roles));
}

SpacePtr jet_space_22() {
    return VarSpace::make({"x", "y", "z", "z_x", "z_xx"},
                          {VarRole::variable, VarRole::variable, VarRole::jet, VarRole::jet,
                           VarRole::jet});
}

SpacePtr dual_jet_space_22() {
    return VarSpace::make({"a", "b", "c", "c_a", "c_aa"},
                          {VarRole::parameter, VarRole::parameter, VarRole::jet, VarRole::jet,
                           VarRole::jet});
}

SpacePtr jet1d_space(int order) {
    std::vector<std::string> names = {"x", "y"};
    std::vector<VarRole> roles = {VarRole::variable, VarRole::variable};
    std::string suffix;
    for (int k = 1; k <= order; ++k) {
        suffix += "x";
        names.push_back("y_" + suffix);
        roles.push_back(VarRole::jet);
    }
    return VarSpace::make(std::move(names), std::move(roles));
}

SpacePtr plane_space() {
    return VarSpace::make({"x", "y"}, {VarRole::variable, VarRole::variable});
}

}  // namespace paracr
