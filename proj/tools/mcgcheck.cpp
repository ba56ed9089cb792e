// mcgcheck: run the claim registry, or compute single curve/word values.
//
//   mcgcheck run --genus all --claims 'G3.S2.*' --json report.json
//   mcgcheck calc apply --genus 3 --word "B4^-1" --curve b0
//   mcgcheck calc intersect --genus 4 b0 b2
//   mcgcheck calc order --genus 3 --word "T*B0"
//   mcgcheck calc nf "a^2 b t"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mcg/claims.hpp"

namespace {

constexpr int kUsage = 2;

// Named curve (a3, b0, c1, e, f) or an explicit walk "walk:1,8,3,10".
mcg::CurveClass parse_curve(int genus, const std::string& text) {
  const mcg::Surface& s = mcg::surface(genus);
  if (text.rfind("walk:", 0) == 0) {
    std::vector<int> w;
    std::size_t pos = 5;
    while (pos < text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string::npos) end = text.size();
      try {
        w.push_back(std::stoi(text.substr(pos, end - pos)));
      } catch (const std::exception&) {
        throw mcg::ParseError("bad side label in '" + text + "'", pos);
      }
      pos = end + 1;
    }
    return mcg::tighten(genus, w);
  }
  if (text == "e" || text == "f") return s.named({text[0], 0});
  if (text.size() >= 2 && (text[0] == 'a' || text[0] == 'b' || text[0] == 'c')) {
    try {
      std::size_t used = 0;
      const int idx = std::stoi(text.substr(1), &used);
      if (used == text.size() - 1) return s.named({text[0], idx});
    } catch (const std::exception&) {
    }
  }
  throw mcg::ParseError("unknown curve '" + text + "'", 0);
}

std::string describe(int genus, const mcg::CurveClass& x) {
  auto name = mcg::surface(genus).name_of(x);
  return name ? *name : x.to_string();
}

std::vector<int> parse_genera(const std::string& g) {
  if (g == "all") return {1, 3, 4};
  if (g == "1" || g == "3" || g == "4") return {std::stoi(g)};
  throw mcg::InvalidInput("--genus must be one of 1, 3, 4, all");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks the claim registry for twist generation at genus 1, 3 and 4"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "evaluate registry claims");
  std::string genus = "all", selector = "all", json_path, format = "text";
  std::uint64_t seed = mcg::props::kDefaultSeed;
  run->add_option("--genus", genus, "1, 3, 4 or all")->check(CLI::IsMember({"1", "3", "4", "all"}));
  run->add_option("--claims", selector, "claim id glob, or all");
  run->add_option("--json", json_path, "write the JSON report here");
  run->add_option("--format", format, "stdout format")->check(CLI::IsMember({"text", "json"}));
  run->add_option("--seed", seed, "seed for the randomized batteries");

  auto* calc = app.add_subcommand("calc", "compute a single value");
  calc->require_subcommand(1);
  int cgenus = 3, bound = 30;
  std::string word, curve;
  std::vector<std::string> pair;
  auto* apply = calc->add_subcommand("apply", "image of a curve under a word");
  apply->add_option("--genus", cgenus)->check(CLI::IsMember({3, 4}));
  apply->add_option("--word", word)->required();
  apply->add_option("--curve", curve)->required();
  auto* intersect = calc->add_subcommand("intersect", "geometric intersection number");
  intersect->add_option("--genus", cgenus)->check(CLI::IsMember({3, 4}));
  intersect->add_option("curves", pair)->expected(2)->required();
  auto* order = calc->add_subcommand("order", "order of a mapping class, if at most the bound");
  order->add_option("--genus", cgenus)->check(CLI::IsMember({3, 4}));
  order->add_option("--word", word)->required();
  order->add_option("--bound", bound)->check(CLI::PositiveNumber);
  auto* nf = calc->add_subcommand("nf", "normal form of a word in a, b, t");
  nf->add_option("word", word)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*run) {
      mcg::claims::RunOptions options;
      options.selector = selector;
      options.genera = parse_genera(genus);
      options.seed = seed;
      const mcg::claims::RunReport report = mcg::claims::run(options);
      const auto json = mcg::claims::to_json(report);
      if (format == "json")
        std::cout << json.dump(2) << "\n";
      else
        std::cout << mcg::claims::render_text(report);
      if (!json_path.empty()) {
        std::ofstream out(json_path);
        if (!out) {
          std::cerr << "cannot write " << json_path << "\n";
          return kUsage;
        }
        out << json.dump(2) << "\n";
      }
      return report.exit_code();
    }
    if (*apply) {
      const auto w = mcg::parse_word(cgenus, word);
      std::cout << describe(cgenus, mcg::apply(w, parse_curve(cgenus, curve))) << "\n";
    } else if (*intersect) {
      std::cout << mcg::geometric_intersection(parse_curve(cgenus, pair[0]), parse_curve(cgenus, pair[1])) << "\n";
    } else if (*order) {
      auto o = mcg::order_of(mcg::parse_word(cgenus, word), bound);
      std::cout << (o ? std::to_string(*o) : "none") << "\n";
    } else if (*nf) {
      using namespace mcg::genus1;
      const PresWord w = parse_pres_word(word);
      const NormalForm n = normal_form(w);
      const PresWord r = n.reduced();
      std::cout << (r.empty() ? "identity" : r.to_string()) << "\n";
      std::cout << "type: " << to_string(n.kind) << "\n";
      std::cout << "conjugate to: " << to_string(torsion_representative(w)) << "\n";
    }
    return 0;
  } catch (const mcg::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const mcg::InvalidInput& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const mcg::UnsupportedInput& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const mcg::InessentialCurve& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const mcg::MalformedWalk& e) {
    std::cerr << e.what() << "\n";
    return kUsage;
  } catch (const mcg::Error& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
}
