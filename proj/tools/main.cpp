#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace fs = std::filesystem;
using namespace csheaf;
using namespace csheaf::app;

namespace {

enum Exit { kOk = 0, kFailed = 1, kInput = 2, kCap = 3 };

void write(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

std::string stem(const Report& r) {
  std::string s = r.command;
  for (auto& c : s)
    if (c == ' ') c = '-';
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact character computations for finite unipotent groups and twisted groups"};
  std::string command, suite, fixturePath, outDir;
  std::vector<std::string> formats{"json"};
  Options opt;
  app.add_option("command", command, "chartable | h1 | forms | twisted-basis | trace-formula | double | packets | verify")
      ->required()
      ->check(CLI::IsMember({"chartable", "h1", "forms", "twisted-basis", "trace-formula", "double", "packets", "verify"}));
  app.add_option("suite", suite, "verify suite: all | easy | sumsq | rings | groupoid")
      ->check(CLI::IsMember({"all", "easy", "sumsq", "rings", "groupoid"}));
  app.add_option("--fixture", fixturePath, "fixture file")->required();
  app.add_option("--out", outDir, "directory for report files (stdout JSON if absent)");
  app.add_option("--format", formats, "json,csv,md")->delimiter(',')->check(CLI::IsMember({"json", "csv", "md"}));
  app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 256));
  app.add_option("--nmax", opt.nmax, "admissibility levels checked per pair")->check(CLI::Range(1, 64));
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }
  if (command == "verify" && suite.empty()) suite = "all";
  if (command != "verify" && !suite.empty()) {
    std::cerr << "error: '" << suite << "' is only valid after verify\n";
    return kInput;
  }

  Report report;
  try {
    auto fx = loadFixture(fixturePath);
    report = runCommand(command, suite, fx, opt);
  } catch (const FixtureError& e) {
    std::cerr << "fixture error: " << e.what() << "\n";
    return kInput;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const CycloError& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const PacketError& e) {
    std::cerr << "FAIL packets.consistency: " << e.what() << "\n";
    return kFailed;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  }

  std::string js = report.toJson().dump(2) + "\n";
  try {
    if (outDir.empty()) {
      std::cout << js;
    } else {
      fs::create_directories(outDir);
      fs::path dir(outDir);
      for (const auto& f : formats) {
        if (f == "json") write(dir / (stem(report) + ".json"), js);
        if (f == "md") write(dir / (stem(report) + ".md"), report.toMarkdown());
        if (f == "csv")
          for (const auto& t : report.tables) write(dir / (stem(report) + "." + t.name + ".csv"), toCsv(t));
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }

  for (const auto& c : report.checks)
    if (!c.passed) std::cerr << "FAIL " << c.id << ": lhs = " << c.lhs.dump() << " ; rhs = " << c.rhs.dump() << "\n";
  std::cerr << report.checks.size() << " checks, " << (report.passed() ? "all passed" : "FAILED") << "\n";
  return report.passed() ? kOk : kFailed;
}
