#include <algorithm>
#include <map>
#include <vector>

#include "zhps/diagram.hpp"

namespace zhps {

namespace {

// Coarse per-spider fingerprint: boundary positions plus the multiset of
// (label text, arity) of incident boxes.
std::string spider_key(const Diagram& d, SpiderId s) {
  std::string key = "b:";
  for (std::size_t i = 0; i < d.inputs().size(); ++i)
    if (d.inputs()[i] == s) key += "i" + std::to_string(i);
  for (std::size_t i = 0; i < d.outputs().size(); ++i)
    if (d.outputs()[i] == s) key += "o" + std::to_string(i);
  std::vector<std::string> incident;
  for (HBoxId h : d.boxes_on(s)) {
    const auto& box = d.hboxes().at(h);
    incident.push_back(box.label.str() + "#" + std::to_string(box.neighbors.size()));
  }
  std::sort(incident.begin(), incident.end());
  key += "|";
  for (const auto& x : incident) key += x + ";";
  return key;
}

bool boxes_match(const Diagram& a, const Diagram& b, const std::map<SpiderId, SpiderId>& m) {
  if (a.hboxes().size() != b.hboxes().size()) return false;
  std::map<std::set<SpiderId>, HLabel> bboxes;
  for (const auto& [id, box] : b.hboxes()) bboxes.emplace(box.neighbors, box.label);
  for (const auto& [id, box] : a.hboxes()) {
    std::set<SpiderId> mapped;
    for (SpiderId s : box.neighbors) mapped.insert(m.at(s));
    auto it = bboxes.find(mapped);
    if (it == bboxes.end() || !(it->second == box.label)) return false;
  }
  return true;
}

bool backtrack(const Diagram& a, const Diagram& b, const std::vector<SpiderId>& order,
               std::size_t pos, std::map<SpiderId, SpiderId>& m, std::set<SpiderId>& used,
               const std::map<SpiderId, std::string>& akeys,
               const std::map<SpiderId, std::string>& bkeys) {
  if (pos == order.size()) return boxes_match(a, b, m);
  const SpiderId s = order[pos];
  if (m.count(s)) return backtrack(a, b, order, pos + 1, m, used, akeys, bkeys);
  for (SpiderId t : b.spiders()) {
    if (used.count(t)) continue;
    if (akeys.at(s) != bkeys.at(t)) continue;
    m[s] = t;
    used.insert(t);
    if (backtrack(a, b, order, pos + 1, m, used, akeys, bkeys)) return true;
    m.erase(s);
    used.erase(t);
  }
  return false;
}

} // namespace

bool iso_equal(const Diagram& a, const Diagram& b) {
  if (a.spiders().size() != b.spiders().size()) return false;
  if (a.hboxes().size() != b.hboxes().size()) return false;
  if (a.inputs().size() != b.inputs().size()) return false;
  if (a.outputs().size() != b.outputs().size()) return false;
  if (a.scalar() != b.scalar()) return false;

  // Boundary order pins part of the mapping outright.
  std::map<SpiderId, SpiderId> m;
  std::set<SpiderId> used;
  auto pin = [&](SpiderId from, SpiderId to) {
    auto it = m.find(from);
    if (it != m.end()) return it->second == to;
    if (used.count(to)) return false;
    m[from] = to;
    used.insert(to);
    return true;
  };
  for (std::size_t i = 0; i < a.inputs().size(); ++i)
    if (!pin(a.inputs()[i], b.inputs()[i])) return false;
  for (std::size_t i = 0; i < a.outputs().size(); ++i)
    if (!pin(a.outputs()[i], b.outputs()[i])) return false;

  std::map<SpiderId, std::string> akeys, bkeys;
  for (SpiderId s : a.spiders()) akeys[s] = spider_key(a, s);
  for (SpiderId s : b.spiders()) bkeys[s] = spider_key(b, s);
  for (const auto& [s, t] : m)
    if (akeys.at(s) != bkeys.at(t)) return false;

  // Match rare fingerprints first to cut the search.
  std::map<std::string, int> freq;
  for (const auto& [s, k] : akeys) freq[k]++;
  std::vector<SpiderId> order(a.spiders().begin(), a.spiders().end());
  std::sort(order.begin(), order.end(), [&](SpiderId x, SpiderId y) {
    const int fx = freq[akeys.at(x)], fy = freq[akeys.at(y)];
    if (fx != fy) return fx < fy;
    return x < y;
  });
  return backtrack(a, b, order, 0, m, used, akeys, bkeys);
}

} // namespace zhps
