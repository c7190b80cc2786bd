#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "dcheck/elaborate.hpp"
#include "dcheck/surface.hpp"

using namespace dcheck;
using nlohmann::json;

namespace {

json load_manifest() {
  std::ifstream in(std::string(CORPUS_DIR) + "/manifest.json");
  REQUIRE(in.good());
  json m;
  in >> m;
  return m;
}

// Leading error kind of a failure detail ("NotAFunction: ..." etc).
std::string kind_of(const std::string& detail) {
  std::size_t n = detail.find_first_of(": ");
  return detail.substr(0, n);
}

}  // namespace

TEST_CASE("every golden case matches its manifest verdict") {
  json manifest = load_manifest();
  // (file, index) -> expected verdict / pinned normalize output
  std::map<std::pair<std::string, int>, json> cases;
  for (const auto& c : manifest["cases"])
    cases[{c["file"], c["index"]}] = c;

  std::set<std::string> files_checked;
  std::set<std::pair<std::string, int>> cases_hit;
  int ok_checks = 0;

  for (const auto& group : manifest["groups"]) {
    Elaborator elab;
    for (const auto& f : group["files"]) {
      std::string file = f;
      bool first = !files_checked.count(file);
      auto vs = elab.run(parse_theory_file(std::string(CORPUS_DIR) + "/" + file),
                         RunOptions{});
      for (const auto& v : vs) {
        auto it = cases.find({file, v.index});
        if (it == cases.end()) {
          // Setup directive: must succeed.
          CHECK_MESSAGE(v.ok, file << ":" << v.span.line << " " << v.detail);
          continue;
        }
        if (first) cases_hit.insert(it->first);
        const json& c = it->second;
        std::string expected = c["verdict"];
        CHECK_MESSAGE(v.kind == c["kind"].get<std::string>(),
                      file << ":" << v.index);
        if (expected == "ok") {
          CHECK_MESSAGE(v.ok, file << ":" << v.span.line << " " << v.detail);
          if (first && v.ok && v.kind == "check") ++ok_checks;
        } else {
          CHECK_MESSAGE(!v.ok, file << ":" << v.span.line);
          CHECK_MESSAGE(kind_of(v.detail) == expected,
                        file << ":" << v.span.line << " " << v.detail);
        }
        if (c.contains("detail"))
          CHECK_MESSAGE(v.detail == c["detail"].get<std::string>(),
                        file << ":" << v.span.line << " " << v.detail);
      }
      files_checked.insert(file);
    }
  }

  // Every manifest case was actually exercised, across a real spread of files.
  CHECK(cases_hit.size() == cases.size());
  CHECK(files_checked.size() >= 10);
  CHECK(ok_checks >= 30);
}

TEST_CASE("group runs are independent of shared prefixes") {
  // equality.d produces identical verdicts whether loaded alone or as the
  // prefix of the naturals group.
  Elaborator alone, prefixed;
  auto va = alone.run(parse_theory_file(std::string(CORPUS_DIR) + "/equality.d"),
                      RunOptions{});
  auto vp = prefixed.run(parse_theory_file(std::string(CORPUS_DIR) + "/equality.d"),
                         RunOptions{});
  prefixed.run(parse_theory_file(std::string(CORPUS_DIR) + "/naturals.d"), RunOptions{});
  REQUIRE(va.size() == vp.size());
  for (std::size_t i = 0; i < va.size(); ++i) {
    CHECK(va[i].ok == vp[i].ok);
    CHECK(va[i].detail == vp[i].detail);
  }
}
