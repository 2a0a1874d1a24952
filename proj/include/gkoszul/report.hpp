#pragma once

// Structured verification results. A check is PASS only when its claim holds
// and every Hilbert table involved has status proved or heuristic; any
// truncated table makes it UNRESOLVED, never PASS. Probe records carry
// informational verdicts outside the PASS/FAIL lattice.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkoszul/engine.hpp"

namespace gkoszul {

enum class Verdict { PASS, FAIL, UNRESOLVED, SKIP, INFO };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::PASS: return "PASS";
    case Verdict::FAIL: return "FAIL";
    case Verdict::UNRESOLVED: return "UNRESOLVED";
    case Verdict::SKIP: return "SKIP";
    default: return "INFO";
  }
}

struct CheckRecord {
  std::string id;      // stable machine id, e.g. "icis.thm41[i=1]"
  std::string anchor;  // human reference
  std::string lhs, rhs;
  Verdict verdict = Verdict::SKIP;
  std::vector<std::string> statuses;  // termination statuses involved
  std::string note;
};

// A quantity entering a check: a value together with the termination
// statuses of the tables that produced it.
struct Quantity {
  long long value = 0;
  bool resolved = true;
  std::vector<std::string> statuses;

  static Quantity of(const HilbertTable& t) {
    Quantity q;
    q.value = t.total;
    q.resolved = t.resolved();
    q.statuses = {to_string(t.termination)};
    return q;
  }
  static Quantity exact(long long v) {
    Quantity q;
    q.value = v;
    q.statuses = {"exact"};
    return q;
  }
  Quantity scaled(long long k) const {
    Quantity q = *this;
    q.value *= k;
    return q;
  }
  Quantity operator+(const Quantity& o) const {
    Quantity q;
    q.value = value + o.value;
    q.resolved = resolved && o.resolved;
    q.statuses = statuses;
    q.statuses.insert(q.statuses.end(), o.statuses.begin(), o.statuses.end());
    return q;
  }
  Quantity operator-(const Quantity& o) const {
    Quantity q = *this + o;
    q.value = value - o.value;
    return q;
  }
};

class Report {
 public:
  explicit Report(nlohmann::ordered_json scenario_echo, std::string field_name)
      : echo_(std::move(scenario_echo)), field_(std::move(field_name)) {}

  void add(CheckRecord rec) { records_.push_back(std::move(rec)); }

  void check_eq(const std::string& id, const std::string& anchor, const Quantity& lhs,
                const Quantity& rhs, const std::string& note = "") {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.lhs = std::to_string(lhs.value);
    r.rhs = std::to_string(rhs.value);
    r.statuses = lhs.statuses;
    r.statuses.insert(r.statuses.end(), rhs.statuses.begin(), rhs.statuses.end());
    r.note = note;
    if (!lhs.resolved || !rhs.resolved)
      r.verdict = Verdict::UNRESOLVED;
    else
      r.verdict = (lhs.value == rhs.value) ? Verdict::PASS : Verdict::FAIL;
    records_.push_back(std::move(r));
  }

  void check_le(const std::string& id, const std::string& anchor, const Quantity& lhs,
                const Quantity& rhs, const std::string& note = "") {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.lhs = std::to_string(lhs.value);
    r.rhs = "<= " + std::to_string(rhs.value);
    r.statuses = lhs.statuses;
    r.statuses.insert(r.statuses.end(), rhs.statuses.begin(), rhs.statuses.end());
    r.note = note;
    if (!lhs.resolved || !rhs.resolved)
      r.verdict = Verdict::UNRESOLVED;
    else
      r.verdict = (lhs.value <= rhs.value) ? Verdict::PASS : Verdict::FAIL;
    records_.push_back(std::move(r));
  }

  void check_zero(const std::string& id, const std::string& anchor, const HilbertTable& t,
                  const std::string& note = "") {
    check_eq(id, anchor, Quantity::of(t), Quantity::exact(0), note);
  }

  // Finite-colength certificates: PASS when the window fired (verdict is
  // proved), UNRESOLVED when the scan was truncated by the bound; a
  // truncated table never PASSes and is not evidence of failure either.
  void check_cert(const std::string& id, const std::string& anchor, const GradeCertificate& cert,
                  const std::string& note = "") {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.lhs = cert.finite_colength ? "finite-colength" : "not-finite-within-bound";
    r.rhs = "finite-colength";
    r.statuses = {to_string(cert.table.termination)};
    r.note = note;
    if (cert.finite_colength)
      r.verdict = Verdict::PASS;
    else
      r.verdict = Verdict::UNRESOLVED;
    records_.push_back(std::move(r));
  }

  void check_true(const std::string& id, const std::string& anchor, bool ok,
                  const std::string& note = "") {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.lhs = ok ? "true" : "false";
    r.rhs = "true";
    r.verdict = ok ? Verdict::PASS : Verdict::FAIL;
    r.note = note;
    records_.push_back(std::move(r));
  }

  void skip(const std::string& id, const std::string& anchor, const std::string& reason) {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.verdict = Verdict::SKIP;
    r.note = reason;
    records_.push_back(std::move(r));
  }

  void info(const std::string& id, const std::string& anchor, const std::string& value,
            const std::string& note = "") {
    CheckRecord r;
    r.id = id;
    r.anchor = anchor;
    r.lhs = value;
    r.verdict = Verdict::INFO;
    r.note = note;
    records_.push_back(std::move(r));
  }

  const std::vector<CheckRecord>& records() const { return records_; }

  int count(Verdict v) const {
    int c = 0;
    for (const auto& r : records_) c += (r.verdict == v);
    return c;
  }

  // 0 = all PASS, 1 = any FAIL, 2 = UNRESOLVED present (no FAIL)
  int exit_status() const {
    if (count(Verdict::FAIL) > 0) return 1;
    if (count(Verdict::UNRESOLVED) > 0) return 2;
    return 0;
  }

  nlohmann::ordered_json to_json(bool with_timestamp = true) const {
    nlohmann::ordered_json j;
    j["tool"] = "gkoszul";
    j["field"] = field_;
    j["scenario"] = echo_;
    if (with_timestamp) j["generated_at"] = timestamp();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& r : records_) {
      nlohmann::ordered_json c;
      c["id"] = r.id;
      c["anchor"] = r.anchor;
      c["lhs"] = r.lhs;
      c["rhs"] = r.rhs;
      c["verdict"] = to_string(r.verdict);
      c["statuses"] = r.statuses;
      c["note"] = r.note;
      checks.push_back(c);
    }
    j["checks"] = checks;
    j["counts"] = {{"pass", count(Verdict::PASS)},
                   {"fail", count(Verdict::FAIL)},
                   {"unresolved", count(Verdict::UNRESOLVED)},
                   {"skip", count(Verdict::SKIP)},
                   {"info", count(Verdict::INFO)}};
    j["exit_status"] = exit_status();
    return j;
  }

  std::string to_text() const {
    std::string out;
    out += "scenario: " + echo_.value("name", std::string("scenario")) + "  field: " + field_ +
           "\n";
    for (const auto& r : records_) {
      out += "[" + to_string(r.verdict) + "] " + r.id;
      if (!r.anchor.empty()) out += "  (" + r.anchor + ")";
      if (!r.lhs.empty() || !r.rhs.empty()) out += "  " + r.lhs + " vs " + r.rhs;
      if (!r.note.empty()) out += "  -- " + r.note;
      out += "\n";
    }
    out += "pass " + std::to_string(count(Verdict::PASS)) + ", fail " +
           std::to_string(count(Verdict::FAIL)) + ", unresolved " +
           std::to_string(count(Verdict::UNRESOLVED)) + ", skip " +
           std::to_string(count(Verdict::SKIP)) + "\n";
    return out;
  }

  std::string to_csv() const {
    auto esc = [](std::string s) {
      for (auto& c : s)
        if (c == ',') c = ';';
      return s;
    };
    std::string out = "id,anchor,lhs,rhs,verdict,note\n";
    for (const auto& r : records_)
      out += esc(r.id) + "," + esc(r.anchor) + "," + esc(r.lhs) + "," + esc(r.rhs) + "," +
             to_string(r.verdict) + "," + esc(r.note) + "\n";
    return out;
  }

 private:
  static std::string timestamp() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
  }

  nlohmann::ordered_json echo_;
  std::string field_;
  std::vector<CheckRecord> records_;
};

}  // namespace gkoszul
