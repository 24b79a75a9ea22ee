#include "distress/named_vector.hpp"

#include <algorithm>

#include "distress/errors.hpp"

namespace distress {

NamedVector::NamedVector(std::vector<std::string> n, Eigen::VectorXd v)
    : names(std::move(n)), values(std::move(v)) {
  if (static_cast<Eigen::Index>(names.size()) != values.size()) {
    fail(ErrorKind::Binding, "name count " + std::to_string(names.size()) +
                                 " does not match value count " + std::to_string(values.size()));
  }
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
}

double NamedVector::at(const std::string& name) const {
  const auto i = index_of(names, name);
  if (i == names.size()) fail(ErrorKind::Binding, "no variable named \"" + name + "\"");
  return values[static_cast<Eigen::Index>(i)];
}

Eigen::VectorXd NamedVector::aligned_to(const std::vector<std::string>& order) const {
  if (order.size() != names.size()) {
    fail(ErrorKind::Binding, "expected " + std::to_string(order.size()) + " variables, got " +
                                 std::to_string(names.size()));
  }
  Eigen::VectorXd out(static_cast<Eigen::Index>(order.size()));
  for (std::size_t j = 0; j < order.size(); ++j) out[static_cast<Eigen::Index>(j)] = at(order[j]);
  return out;
}

}  // namespace distress
