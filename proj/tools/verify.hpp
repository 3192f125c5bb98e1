#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace rsm::verify {

struct Outcome {
  int id = 0;
  std::string name;
  bool pass = false;
  double measured = 0.0;   // the quantity compared against tol
  double tol = 0.0;
  std::string detail;      // extra measured values, human readable
  double seconds = 0.0;
};

struct Criterion {
  int id;
  std::string name;
  double tol;              // pinned default
  bool identity;           // part of the quick "identities" suite
  std::function<Outcome(double tol)> run;
};

const std::vector<Criterion>& criteria();

// runs the selected ids (all when empty); overrides replace the pinned tolerance by id
std::vector<Outcome> run(const std::vector<int>& ids, const std::map<int, double>& overrides = {},
                         const std::function<void(const Outcome&)>& on_done = nullptr);

std::vector<int> suite_ids(const std::string& suite);  // "identities" or "acceptance"

std::string format_line(const Outcome& o);

}  // namespace rsm::verify
