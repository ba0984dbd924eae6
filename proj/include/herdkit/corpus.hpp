#pragma once

#include <string>
#include <utility>
#include <vector>

#include "coalg.hpp"
#include "io.hpp"
#include "setcore.hpp"

namespace herdkit {

struct CorpusGroup {
  std::string name;
  GroupTable group;
};

// Every group of order <= 8 up to isomorphism, smallest first. The two- and
// three-factor products cover the non-cyclic abelian ones.
inline std::vector<CorpusGroup> corpus_groups(std::size_t max_size = 8) {
  const GroupTable c2 = cyclic_group(2);
  const GroupTable v4 = direct_product(c2, c2);
  std::vector<CorpusGroup> all{
      {"c1", cyclic_group(1)},
      {"c2", c2},
      {"c3", cyclic_group(3)},
      {"c4", cyclic_group(4)},
      {"v4", v4},
      {"c5", cyclic_group(5)},
      {"c6", cyclic_group(6)},
      {"s3", symmetric3()},
      {"c7", cyclic_group(7)},
      {"c8", cyclic_group(8)},
      {"c2xc4", direct_product(c2, cyclic_group(4))},
      {"c2x2x2", direct_product(c2, v4)},
      {"d4", dihedral4()},
      {"q8", quaternion8()},
  };
  std::vector<CorpusGroup> out;
  for (auto& g : all)
    if (g.group.size <= max_size) out.push_back(std::move(g));
  return out;
}

// Deterministic file set for one kind ("group", "heap", "herd", "comodule")
// or "all". Comodule files reference their herd file by name, so they are
// meant to land in the same directory as the "herd" output.
inline std::vector<std::pair<std::string, Json>> corpus_files(const std::string& kind,
                                                              std::size_t max_size) {
  std::vector<std::pair<std::string, Json>> out;
  const std::vector<CorpusGroup> groups = corpus_groups(max_size);
  const bool all = kind == "all";
  if (all || kind == "group")
    for (const auto& g : groups)
      out.emplace_back(g.name + "_group.json", group_to_json(g.group));
  if (all || kind == "heap")
    for (const auto& g : groups)
      out.emplace_back(g.name + "_heap.json", heap_to_json(group_to_heap(g.group)));
  if (all || kind == "herd")
    for (const auto& g : groups)
      out.emplace_back(g.name + "_herd.json",
                       structure_to_json(structure_of(heap_algebra(group_to_heap(g.group)))));
  if (all || kind == "comodule")
    for (const auto& g : groups) {
      const Herd a = heap_algebra(group_to_heap(g.group));
      const std::string ref = g.name + "_herd.json";
      for (std::size_t w = 0; w < g.group.size; ++w) {
        Json j = comodule_to_json(weight_comodule(a, w));
        j["over"] = ref;
        out.emplace_back(g.name + "_weight" + std::to_string(w) + ".json", std::move(j));
      }
      Json j = comodule_to_json(regular_comodule(a));
      j["over"] = ref;
      out.emplace_back(g.name + "_regular.json", std::move(j));
    }
  return out;
}

}  // namespace herdkit
