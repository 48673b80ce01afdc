#pragma once

#include <string>
#include <vector>

namespace sac {
namespace classify {

enum class Label { Sec, NonSec, Unlabeled };

const char* to_string(Label l);

struct RequirementRecord {
  std::string project;
  std::string section;
  std::string req_id;
  std::string text;
  Label label = Label::Unlabeled;
};

/// CSV with header `project,section,req_id,text,label`; empty label means
/// unlabeled (prediction input). Throws std::runtime_error on bad rows or
/// a duplicate (project, req_id).
std::vector<RequirementRecord> load_dataset(const std::string& csv_text);

}  // namespace classify
}  // namespace sac
