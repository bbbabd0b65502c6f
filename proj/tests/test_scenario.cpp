#include <doctest.h>

#include <cmath>
#include <set>

#include "owcsim/config.hpp"
#include "owcsim/error.hpp"
#include "owcsim/scenario.hpp"

using namespace owcsim;

namespace {

std::set<double> xs_of(const std::vector<ApSpec>& aps) {
  std::set<double> s;
  for (const auto& ap : aps) s.insert(ap.position.x);
  return s;
}

std::set<double> ys_of(const std::vector<ApSpec>& aps) {
  std::set<double> s;
  for (const auto& ap : aps) s.insert(ap.position.y);
  return s;
}

}  // namespace

TEST_CASE("default_ap_grid cell centres") {
  const Room room;  // 5 x 5 x 4

  SUBCASE("eight APs form a 2 x 4 grid") {
    const auto aps = default_ap_grid(room, 8);
    REQUIRE(aps.size() == 8);
    CHECK(xs_of(aps) == std::set<double>{1.25, 3.75});
    CHECK(ys_of(aps) == std::set<double>{0.625, 1.875, 3.125, 4.375});
    for (const auto& ap : aps) {
      CHECK(ap.position.z == 4.0);
      CHECK(ap.orientation == Vec3{0, 0, -1});
    }
  }

  SUBCASE("four APs form a 2 x 2 grid") {
    const auto aps = default_ap_grid(room, 4);
    CHECK(xs_of(aps) == std::set<double>{1.25, 3.75});
    CHECK(ys_of(aps) == std::set<double>{1.25, 3.75});
  }

  SUBCASE("single AP at the ceiling centre") {
    const Room other{7.0, 3.0, 2.5, 0.8};
    const auto aps = default_ap_grid(other, 1);
    REQUIRE(aps.size() == 1);
    CHECK(aps[0].position == Vec3{3.5, 1.5, 2.5});
  }

  SUBCASE("reflection symmetry through the vertical mid-planes") {
    for (int n : {2, 4, 6, 8, 9, 12}) {
      const auto aps = default_ap_grid(room, n);
      for (const auto& ap : aps) {
        bool mirrored_x = false, mirrored_y = false;
        for (const auto& other : aps) {
          mirrored_x |= std::abs(other.position.x - (room.width - ap.position.x)) < 1e-12 &&
                        std::abs(other.position.y - ap.position.y) < 1e-12;
          mirrored_y |= std::abs(other.position.y - (room.depth - ap.position.y)) < 1e-12 &&
                        std::abs(other.position.x - ap.position.x) < 1e-12;
        }
        CHECK(mirrored_x);
        CHECK(mirrored_y);
      }
    }
  }

  CHECK_THROWS_AS(default_ap_grid(room, 0), ConfigError);
}

TEST_CASE("place_users") {
  const Room room;

  SUBCASE("deterministic") {
    CHECK(place_users(room, 3, 42) == place_users(room, 3, 42));
    CHECK(place_users(room, 3, 42) != place_users(room, 3, 43));
  }

  SUBCASE("prefix stable") {
    const auto five = place_users(room, 5, 11);
    const auto eight = place_users(room, 8, 11);
    for (int i = 0; i < 5; ++i) CHECK(five[static_cast<std::size_t>(i)] == eight[static_cast<std::size_t>(i)]);
  }

  SUBCASE("uniform over the footprint") {
    const auto users = place_users(room, 1000, 7);
    double mx = 0, my = 0;
    for (const auto& u : users) {
      REQUIRE(u.x >= 0.0);
      REQUIRE(u.x <= room.width);
      REQUIRE(u.y >= 0.0);
      REQUIRE(u.y <= room.depth);
      REQUIRE(u.z == room.receive_plane_height);
      mx += u.x;
      my += u.y;
    }
    mx /= 1000;
    my /= 1000;
    CHECK(std::abs(mx - 2.5) <= 0.05 * 2.5);
    CHECK(std::abs(my - 2.5) <= 0.05 * 2.5);
  }

  SUBCASE("zero users rejected") {
    CHECK_THROWS_WITH_AS(place_users(room, 0, 1), doctest::Contains("n_users must be ≥ 1"),
                         ConfigError);
  }
}

TEST_CASE("validate rejects bad scenarios with the offending key") {
  auto expect_key = [](Scenario s, const std::string& key) {
    try {
      validate(s);
      FAIL("expected ConfigError for " << key);
    } catch (const ConfigError& e) {
      CHECK(e.key() == key);
    }
  };

  Scenario s = default_scenario();
  CHECK_NOTHROW(validate(s));

  { auto t = s; t.room.width = 0; expect_key(t, "room.width"); }
  { auto t = s; t.room.receive_plane_height = 4.0; expect_key(t, "room.receive_plane_height"); }
  { auto t = s; t.aps.clear(); expect_key(t, "system.n_aps"); }
  { auto t = s; t.aps[3].position.x = 6.0; expect_key(t, "aps[3]"); }
  { auto t = s; t.vcsel.n_elements = 24; expect_key(t, "vcsel.n_elements"); }
  { auto t = s; t.vcsel.beam_waist_w0 = -1; expect_key(t, "vcsel.beam_waist_w0"); }
  { auto t = s; t.vcsel.rin_db_per_hz = 3; expect_key(t, "vcsel.rin_db_per_hz"); }
  { auto t = s; t.led.lambertian_order_m = 0.5; expect_key(t, "led.lambertian_order_m"); }
  { auto t = s; t.receiver.fov_half_angle = 2.0; expect_key(t, "receiver.fov_half_angle"); }
  { auto t = s; t.receiver.background_current = -1e-6; expect_key(t, "receiver.background_current"); }
  { auto t = s; t.users = {{1, 1, 1}, {10, 0, 1}}; expect_key(t, "system.users[1]"); }
  { auto t = s; t.users = {{1, 1, 0.5}}; expect_key(t, "system.users[0]"); }
}

TEST_CASE("validate_config applies every default") {
  const Scenario s = validate_config(parse_config(""));
  CHECK(s == default_scenario());
  CHECK(s.vcsel.beam_waist_w0 == 5e-6);
  CHECK(s.vcsel.pitch == 10e-6);
  CHECK(s.vcsel.n_elements == 25);
  CHECK(s.vcsel.lens_focal_length == 0.127e-3);
  CHECK(s.vcsel.vcsel_to_lens == 0.133e-3);
  CHECK(s.vcsel.wavelength == 1550e-9);
  CHECK(s.vcsel.lens_refractive_index == 1.5);
  CHECK(s.vcsel.bandwidth_hz == 1.5e9);
  CHECK(s.vcsel.rin_db_per_hz == -155.0);
  CHECK(s.vcsel.electrical_power_per_element == 50e-3);
  CHECK(s.receiver.load_resistance == 50.0);
  CHECK(s.receiver.tia_noise_figure_db == 5.0);
  CHECK(s.fec_ber_limit == 1e-3);
  CHECK(s.n_aps() == 8);
  CHECK(s.led.n_emitters == 4);
  CHECK(s.led.electrical_power_per_emitter == 3.0);
  CHECK(s.room.height - s.room.receive_plane_height == 3.0);
}

TEST_CASE("validate_config error messages") {
  CHECK_THROWS_WITH_AS(validate_config(parse_config("[receiver]\nfov_half_angle = 2.0\n")),
                       doctest::Contains("fov_half_angle exceeds π/2"), ConfigError);
  CHECK_THROWS_WITH_AS(validate_config(parse_config("[system]\nusers = 10, 0, 1\n")),
                       doctest::Contains("user 0"), ConfigError);
  CHECK_THROWS_WITH_AS(validate_config(parse_config("[system]\nn_aps = 0\n")),
                       doctest::Contains("system.n_aps"), ConfigError);
}

TEST_CASE("validated scenarios re-validate") {
  const char* configs[] = {
      "",
      "[room]\nwidth = 7\ndepth = 3\n[system]\nn_aps = 6\n",
      "[system]\nusers = 1, 1, 1; 2.5, 2.5, 1\n[vcsel]\nn_elements = 9\n",
  };
  for (const char* text : configs) {
    const Scenario s = validate_config(parse_config(text));
    CHECK_NOTHROW(validate(s));
    CHECK(validate_config(parse_config(serialize_config(s, RunConfig{}))) == s);
  }
}
