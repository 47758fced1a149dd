#pragma once

#include <json.hpp>

#include <chrono>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace evk {

enum class Status { pass, fail, range_excluded, not_in_paper, info };

inline std::string status_name(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::range_excluded:
      return "range-excluded";
    case Status::not_in_paper:
      return "not-in-paper";
    default:
      return "info";
  }
}

struct Row {
  std::string id;
  std::string indices;
  Status status = Status::pass;
  std::string residual = "0";
  std::string note;
  long long millis = 0;
};

// One suite run: a flat list of relation-instance rows plus the
// configuration that produced them.  Reports with identical config and
// seed are byte-identical when timing is disabled.
struct Report {
  std::string suite;
  std::map<std::string, std::string> config;
  std::vector<Row> rows;

  int count(Status s) const {
    int c = 0;
    for (const auto& r : rows)
      if (r.status == s) ++c;
    return c;
  }
  bool ok() const { return count(Status::fail) == 0; }

  void add(Row r) { rows.push_back(std::move(r)); }

  nlohmann::json to_json(bool timing) const {
    nlohmann::json jc;
    jc["suite"] = suite;
    for (const auto& [k, v] : config) jc[k] = v;
    nlohmann::json jr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"id", r.id},
                       {"indices", r.indices},
                       {"status", status_name(r.status)},
                       {"residual", r.residual},
                       {"millis", timing ? r.millis : 0}};
      if (!r.note.empty()) j["note"] = r.note;
      jr.push_back(std::move(j));
    }
    return nlohmann::json{{"config", std::move(jc)}, {"results", std::move(jr)}};
  }

  std::string table() const {
    size_t wid = 2, widx = 7;
    for (const auto& r : rows) {
      wid = std::max(wid, r.id.size());
      widx = std::max(widx, r.indices.size());
    }
    std::ostringstream os;
    os << "suite: " << suite << "\n";
    for (const auto& [k, v] : config) os << "  " << k << " = " << v << "\n";
    for (const auto& r : rows) {
      os << "  " << r.id << std::string(wid - r.id.size() + 2, ' ') << r.indices
         << std::string(widx - r.indices.size() + 2, ' ') << status_name(r.status);
      if (r.status == Status::fail) os << "  residual: " << r.residual;
      if (!r.note.empty()) os << "  [" << r.note << "]";
      os << "\n";
    }
    os << "  total " << rows.size() << ": " << count(Status::pass) << " pass, " << count(Status::fail)
       << " fail, " << count(Status::range_excluded) << " range-excluded, "
       << count(Status::not_in_paper) << " not-in-paper, " << count(Status::info) << " info\n";
    return os.str();
  }
};

class Stopwatch {
 public:
  Stopwatch() : t0_(std::chrono::steady_clock::now()) {}
  long long millis() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0_)
        .count();
  }
  void reset() { t0_ = std::chrono::steady_clock::now(); }

 private:
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace evk
