#ifndef PROFIN_REPORT_HPP
#define PROFIN_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "json.hpp"

namespace profin
{

/// Named invariant values of one group, each tagged with the operation that
/// produced it. Keys are unique and kept sorted, so the JSON form is stable.
class InvariantReport
{
public:
  using Value = std::variant<bool, std::uint64_t, std::vector<std::uint64_t>, std::string>;

  explicit InvariantReport(std::string group) : group_(std::move(group)) {}

  void set(const std::string &name, Value value, const std::string &operation)
  {
    if (!entries_.emplace(name, Entry{std::move(value), operation}).second)
      throw invalid_input("duplicate report key '" + name + "'");
  }

  const std::string &group() const noexcept { return group_; }
  bool has(const std::string &name) const { return entries_.count(name) != 0; }
  const Value &value(const std::string &name) const { return entries_.at(name).value; }
  const std::string &provenance(const std::string &name) const
  {
    return entries_.at(name).operation;
  }

  nlohmann::json to_json() const
  {
    nlohmann::json inv = nlohmann::json::object(), prov = nlohmann::json::object();
    for (auto &[name, e] : entries_) {
      std::visit([&](const auto &v) { inv[name] = v; }, e.value);
      prov[name] = e.operation;
    }
    return {{"group", group_}, {"invariants", inv}, {"provenance", prov}};
  }

private:
  struct Entry
  {
    Value value;
    std::string operation;
  };

  std::string group_;
  std::map<std::string, Entry> entries_;
};

} // namespace profin

#endif
