#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace distress {

/// Values tagged with variable names. Coefficients and predictors are always
/// matched through the names, never through their positions.
struct NamedVector {
  std::vector<std::string> names;
  Eigen::VectorXd values;

  NamedVector() = default;
  NamedVector(std::vector<std::string> n, Eigen::VectorXd v);

  std::size_t size() const { return names.size(); }
  double at(const std::string& name) const;
  /// Values rearranged into `order`. Throws a binding error when the name
  /// sets differ.
  Eigen::VectorXd aligned_to(const std::vector<std::string>& order) const;
};

/// Index of `name` in `names`, or names.size() when absent.
std::size_t index_of(const std::vector<std::string>& names, const std::string& name);

}  // namespace distress
