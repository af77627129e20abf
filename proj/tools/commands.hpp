#pragma once

#include <string>
#include <vector>

#include "fixture.hpp"
#include "json.hpp"

namespace csheaf::app {

using nlohmann::json;

struct Check {
  std::string id;
  bool passed = false;
  json lhs;
  json rhs;
};

struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Report {
  std::string command;
  std::string fixture;
  json result = json::object();
  std::vector<Check> checks;
  std::vector<Table> tables;

  bool passed() const;
  json toJson() const;
  std::string toMarkdown() const;
};

struct Options {
  int jobs = 1;
  int nmax = 0;  // 0: fixture value
};

// command is one of chartable, h1, forms, twisted-basis, trace-formula, double,
// packets, verify; `suite` selects the verify suite (all, easy, sumsq, rings, groupoid).
Report runCommand(const std::string& command, const std::string& suite, const Fixture& fx, const Options& opt);

std::string toCsv(const Table& t);

}  // namespace csheaf::app
