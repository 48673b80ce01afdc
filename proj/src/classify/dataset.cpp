#include "sac/classify/dataset.hpp"

#include <set>
#include <stdexcept>

#include "sac/csv.hpp"

namespace sac {
namespace classify {

const char* to_string(Label l) {
  switch (l) {
    case Label::Sec: return "sec";
    case Label::NonSec: return "nonsec";
    case Label::Unlabeled: return "";
  }
  return "";
}

std::vector<RequirementRecord> load_dataset(const std::string& csv_text) {
  auto rows = csv::parse(csv_text);
  const csv::Row header = {"project", "section", "req_id", "text", "label"};
  if (rows.empty() || rows[0] != header)
    throw std::runtime_error(
        "dataset must start with header project,section,req_id,text,label");

  std::vector<RequirementRecord> records;
  std::set<std::pair<std::string, std::string>> keys;
  for (size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    const std::string where = "dataset row " + std::to_string(i + 1);
    if (row.size() != 5)
      throw std::runtime_error(where + " has " + std::to_string(row.size()) +
                               " fields, expected 5");
    RequirementRecord rec;
    rec.project = row[0];
    rec.section = row[1];
    rec.req_id = row[2];
    rec.text = row[3];
    if (rec.project.empty() || rec.req_id.empty() || rec.text.empty())
      throw std::runtime_error(where + " is missing project, req_id or text");
    if (row[4] == "sec") rec.label = Label::Sec;
    else if (row[4] == "nonsec") rec.label = Label::NonSec;
    else if (row[4].empty()) rec.label = Label::Unlabeled;
    else throw std::runtime_error(where + ": label must be sec, nonsec or empty");
    if (!keys.insert({rec.project, rec.req_id}).second)
      throw std::runtime_error(where + ": duplicate requirement id " + rec.req_id +
                               " in project " + rec.project);
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace classify
}  // namespace sac
