#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "hypervol/catalog.hpp"
#include "hypervol/error.hpp"
#include "hypervol/glue.hpp"

using namespace hypervol;

TEST(Catalog, NamesResolve) {
  for (const auto& n : catalog_names()) {
    CatalogEntry e = catalog_entry(n);
    EXPECT_EQ(e.name, n);
    EXPECT_NO_THROW(e.graph.validate()) << n;
  }
  EXPECT_THROW(catalog_entry("no-such-thing"), ValidationError);
  EXPECT_THROW(catalog_entry("tetrahedron-regular:3/2"), ValidationError);
  EXPECT_THROW(catalog_entry("tetrahedron-regular:x"), ValidationError);
}

TEST(Catalog, JsonRoundTrip) {
  for (const auto& n : catalog_names()) {
    CatalogEntry e = catalog_entry(n);
    CatalogEntry back = entry_from_json(nlohmann::json::parse(to_json(e).dump()));
    EXPECT_EQ(back.name, e.name);
    EXPECT_EQ(back.expected_volume, e.expected_volume);
    EXPECT_TRUE(same_polyhedron(back.graph, e.graph)) << n;
    // Serialising twice gives identical text.
    EXPECT_EQ(to_json(back).dump(), to_json(e).dump()) << n;
  }
}

TEST(Catalog, IsomorphismDetectsChanges) {
  PlanarTrivalentGraph a = catalog_entry("prism-235").graph, b = a;
  EXPECT_TRUE(same_polyhedron(a, b));
  b.set_angle(b.live_edges()[0], {1, 4});
  EXPECT_FALSE(same_polyhedron(a, b));
  EXPECT_FALSE(same_polyhedron(a, dodecahedron_graph()));
  // A relabelled prism (faces kept) is the same polyhedron.
  PlanarTrivalentGraph c = prism_graph(5);
  PlanarTrivalentGraph d = prism_graph(5);
  EXPECT_TRUE(same_polyhedron(c, d));
}

TEST(Catalog, PrismAngleAssignment) {
  PlanarTrivalentGraph g = catalog_entry("prism-235").graph;
  int vertical = 0, bottom = 0, top = 0;
  for (int e : g.live_edges()) {
    auto [f, h] = g.edge_faces(e);
    Angle a = *g.angle(e);
    bool lateral_f = f <= 5, lateral_h = h <= 5;
    if (lateral_f && lateral_h) {
      EXPECT_EQ(a, (Angle{2, 5}));
      ++vertical;
    } else if (f == 6 || h == 6) {
      EXPECT_EQ(a, (Angle{1, 2}));
      ++bottom;
    } else {
      EXPECT_EQ(a, (Angle{1, 3}));
      ++top;
    }
  }
  EXPECT_EQ(vertical, 5);
  EXPECT_EQ(bottom, 5);
  EXPECT_EQ(top, 5);
}

TEST(Catalog, ExpectedVolumesHold) {
  for (const auto& n : catalog_names()) {
    CatalogEntry e = catalog_entry(n);
    if (!e.expected_volume) continue;
    GluingSolution s = solve(plan_from_trace(e.graph, reduce(e.graph)));
    EXPECT_NEAR(s.volume, *e.expected_volume, 1e-4) << n;
  }
}

TEST(Catalog, DirectoryOverride) {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "hypervol-catalog-test";
  fs::create_directories(dir);
  CatalogEntry e = catalog_entry("dodecahedron-right-angled");
  e.name = "prism-235";
  e.notes = "override";
  {
    std::ofstream out(dir / "prism-235.json");
    out << to_json(e).dump(2);
  }
  setenv("HYPERVOL_CATALOG_DIR", dir.c_str(), 1);
  CatalogEntry got = catalog_entry("prism-235");
  EXPECT_EQ(got.notes, "override");
  EXPECT_EQ(got.graph.face_count(), 12);
  // Names without a file still fall back to the built-ins.
  EXPECT_EQ(catalog_entry("dodecahedron-pi3").graph.face_count(), 12);
  unsetenv("HYPERVOL_CATALOG_DIR");
  EXPECT_EQ(catalog_entry("prism-235").graph.face_count(), 7);
  fs::remove_all(dir);
}

TEST(Catalog, MalformedFilesRejected) {
  namespace fs = std::filesystem;
  fs::path p = fs::temp_directory_path() / "hypervol-bad.json";
  nlohmann::json j = to_json(catalog_entry("prism-235"));
  j["edges"][0]["angle"] = {{"p", 3}, {"q", 2}};
  {
    std::ofstream out(p);
    out << j.dump();
  }
  EXPECT_THROW(load_polyhedron_file(p.string()), ValidationError);
  {
    std::ofstream out(p);
    out << "{not json";
  }
  EXPECT_THROW(load_polyhedron_file(p.string()), ValidationError);
  EXPECT_THROW(load_polyhedron_file("/nonexistent/file.json"), ValidationError);
  fs::remove(p);
}
