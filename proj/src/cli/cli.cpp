#include "ctfuse/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "ctfuse/chartab.hpp"
#include "ctfuse/data_paths.hpp"
#include "ctfuse/error.hpp"
#include "ctfuse/facts.hpp"
#include "ctfuse/fusion.hpp"
#include "ctfuse/groupcore/models.hpp"

namespace ctfuse::cli {

  namespace {

    // A table argument is a file path or the id of a shipped fixture.
    std::filesystem::path resolve_table(std::string const& arg) {
      if (std::filesystem::exists(arg)) {
        return arg;
      }
      return table_path(arg);
    }

    CharacterTable load_valid(std::string const& arg, bool check) {
      CharacterTable t = load_table(resolve_table(arg));
      if (check) {
        auto const report = validate(t);
        if (!report.ok()) {
          throw FormatError("table " + t.name + " fails validation:\n" + report.summary());
        }
      }
      return t;
    }

    struct FuseArgs {
      std::string   sub, amb = "monster", facts, json;
      std::uint64_t max_nodes  = 0;
      std::size_t   characters = 0;
      bool          verbose    = false;
      bool          skip_validation = false;
    };

    int cmd_fuse(FuseArgs const& a, std::ostream& out, std::ostream& err) {
      CharacterTable sub, amb;
      std::vector<FusionFact> facts;
      try {
        sub = load_valid(a.sub, !a.skip_validation);
        amb = load_valid(a.amb, !a.skip_validation);
        if (!a.facts.empty()) {
          facts = load_facts(a.facts);
        }
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
      FusionOptions opts;
      opts.max_nodes = a.max_nodes;
      if (a.characters != 0) {
        for (std::size_t i = 0; i < std::min(a.characters, amb.irreducibles.size()); ++i) {
          opts.ambient_characters.push_back(i);
        }
      }
      std::vector<FusionMap> maps;
      try {
        auto result = possible_class_fusions(sub, amb, opts);
        maps        = std::move(result.maps);
        out << "candidates: " << maps.size() << '\n';
        if (a.verbose) {
          auto const& s = result.stats;
          out << "nodes " << s.nodes << ", leaves " << s.leaves << ", propagation failures "
              << s.propagation_failures << ", decomposition prunes " << s.decomposition_prunes
              << ", bound prunes " << s.bound_prunes << '\n';
        }
        if (!facts.empty() && !maps.empty()) {
          facts = chain_power_facts(amb, facts);
          maps  = apply_facts(maps, sub, amb, facts);
          out << "after facts: " << maps.size() << '\n';
        }
      } catch (SearchAborted const& e) {
        err << "error: " << e.what() << '\n';
        return mismatch;
      } catch (NoFusionPossible const& e) {
        out << "candidates: 0\n";
        err << e.what() << '\n';
        return no_match;
      } catch (InconsistentFact const& e) {
        err << "error: " << e.what() << '\n';
        return no_match;
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
      if (!a.json.empty()) {
        auto const j = fusion_result_json(sub, amb, maps);
        if (a.json == "-") {
          out << j.dump() << '\n';
        } else {
          std::ofstream f(a.json);
          if (!f) {
            err << "error: cannot write " << a.json << '\n';
            return invalid_input;
          }
          f << j.dump() << '\n';
        }
      }
      if (maps.empty()) {
        return no_match;
      }
      if (maps.size() == 1) {
        for (auto const& line : render_fusion(sub, amb, maps[0])) {
          out << line << '\n';
        }
        return ok;
      }
      // Show where the candidates disagree.
      for (std::size_t c = 0; c < sub.num_classes(); ++c) {
        std::set<std::size_t> images;
        for (auto const& m : maps) {
          images.insert(m[c]);
        }
        if (images.size() > 1) {
          out << sub.classes[c].name << ":";
          for (auto x : images) {
            out << ' ' << amb.classes[x].name;
          }
          out << '\n';
        }
      }
      return ambiguous;
    }

    struct IdentifyArgs {
      std::string              amb = "monster";
      std::uint32_t            order = 0;
      std::string              chi;
      std::vector<std::string> powers;
    };

    int cmd_identify(IdentifyArgs const& a, std::ostream& out, std::ostream& err) {
      FusionFact f;
      CharacterTable amb;
      try {
        amb             = load_table(resolve_table(a.amb));
        f.label         = "query";
        f.element_order = a.order;
        if (!a.chi.empty()) {
          mpz_class v;
          if (v.set_str(a.chi, 10) != 0) {
            throw FormatError("--chi must be an integer");
          }
          f.chi = Cyclotomic(v);
        }
        for (auto const& p : a.powers) {
          auto const colon = p.find(':');
          if (colon == std::string::npos) {
            throw FormatError("--power takes k:LABEL, got " + p);
          }
          std::size_t pos = 0;
          std::int64_t k  = std::stoll(p.substr(0, colon), &pos);
          if (pos != colon) {
            throw FormatError("--power takes k:LABEL, got " + p);
          }
          f.powers.emplace_back(k, p.substr(colon + 1));
        }
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      } catch (std::logic_error const&) {
        err << "error: --power takes k:LABEL\n";
        return invalid_input;
      }
      try {
        auto const labels = class_labels(amb, identify_class(amb, f));
        for (std::size_t i = 0; i < labels.size(); ++i) {
          out << (i == 0 ? "" : " ") << labels[i];
        }
        out << '\n';
        return ok;
      } catch (InconsistentFact const& e) {
        err << e.what() << '\n';
        return no_match;
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
    }

    int cmd_verify_models(std::vector<std::string> const& only, std::ostream& out, std::ostream& err) {
      std::vector<std::string> ids;
      if (only.empty()) {
        for (auto const& s : groupcore::model_specs()) {
          ids.push_back(s.id);
        }
      } else {
        ids = only;
      }
      bool all_ok = true;
      for (auto const& id : ids) {
        groupcore::ModelReport report;
        try {
          groupcore::model_spec(id);
          report = groupcore::verify_model(id, load_table(table_path(id)));
        } catch (PreconditionError const& e) {
          err << "error: " << e.what() << '\n';
          return invalid_input;
        } catch (Error const& e) {
          err << "error: " << id << ": " << e.what() << '\n';
          all_ok = false;
          continue;
        }
        out << id << ": " << (report.ok() ? "ok" : "MISMATCH") << '\n';
        for (auto const& c : report.checks) {
          out << "  " << (c.ok ? "ok   " : "FAIL ") << c.name;
          if (!c.detail.empty()) {
            out << " (" << c.detail << ")";
          }
          out << '\n';
        }
        all_ok &= report.ok();
      }
      return all_ok ? ok : mismatch;
    }

    int cmd_facts_diff(std::string const& a, std::string const& b, std::ostream& out,
                       std::ostream& err) {
      std::vector<FusionFact> fa, fb;
      try {
        fa = load_facts(a);
        fb = load_facts(b);
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
      auto const diff = facts_diff(fa, fb);
      for (auto const& line : diff) {
        out << line << '\n';
      }
      return diff.empty() ? ok : mismatch;
    }

    int cmd_validate(std::string const& table, std::ostream& out, std::ostream& err) {
      try {
        CharacterTable t      = load_table(resolve_table(table));
        auto const     report = validate(t);
        out << t.name << ": " << report.summary() << (report.ok() ? "\n" : "");
        return report.ok() ? ok : invalid_input;
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
    }

    int cmd_closure(std::string const& amb_arg, std::vector<std::string> const& seeds,
                    std::vector<std::uint32_t> const& orders, std::ostream& out,
                    std::ostream& err) {
      try {
        CharacterTable const     amb = load_table(resolve_table(amb_arg));
        std::vector<std::size_t> idx;
        for (auto const& s : seeds) {
          idx.push_back(amb.require_class(s));
        }
        auto const c      = closure_deduction(amb, idx, orders);
        auto const labels = class_labels(amb, c.classes);
        for (std::size_t i = 0; i < labels.size(); ++i) {
          out << (i == 0 ? "" : " ") << labels[i];
        }
        out << '\n';
        if (!c.unresolved.empty()) {
          out << "unresolved orders:";
          for (auto o : c.unresolved) {
            out << ' ' << o;
          }
          out << '\n';
          return ambiguous;
        }
        return ok;
      } catch (InconsistentFact const& e) {
        err << e.what() << '\n';
        return no_match;
      } catch (Error const& e) {
        err << "error: " << e.what() << '\n';
        return invalid_input;
      }
    }

  }  // namespace

  int run(int argc, char const* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Class fusion search and verification against character tables", "ctfuse"};
    app.require_subcommand(1);
    app.footer("Tables may be given as paths or fixture ids (e.g. monster, l2_11_sq4).\n"
               "CTFUSE_DATA_DIR overrides the fixture directory.");

    FuseArgs fa;
    auto*    fuse = app.add_subcommand("fuse", "Enumerate class fusions, optionally filtered by facts");
    fuse->add_option("--sub", fa.sub, "Subgroup table")->required();
    fuse->add_option("--amb", fa.amb, "Ambient table")->capture_default_str();
    fuse->add_option("--facts", fa.facts, "Facts file");
    fuse->add_option("--json", fa.json, "Write the fusion result JSON to a file ('-' for stdout)");
    fuse->add_option("--max-nodes", fa.max_nodes, "Abort the search after this many nodes");
    fuse->add_option("--characters", fa.characters,
                     "Use only the first K ambient irreducibles in the decomposition test");
    fuse->add_flag("-v,--verbose", fa.verbose, "Print search statistics");
    fuse->add_flag("--no-validate", fa.skip_validation, "Skip table validation");

    IdentifyArgs ia;
    auto* identify = app.add_subcommand("identify", "Ambient classes matching order, character value and powers");
    identify->add_option("--amb", ia.amb, "Ambient table")->capture_default_str();
    identify->add_option("--order", ia.order, "Element order")->required()->check(CLI::PositiveNumber);
    identify->add_option("--chi", ia.chi, "Value of the distinguished character");
    identify->add_option("--power", ia.powers, "k:LABEL, the class of the k-th power (repeatable)");

    std::vector<std::string> only;
    auto* verify = app.add_subcommand("verify-models", "Check the permutation models against the tables");
    verify->add_option("--only", only, "Model id (repeatable)");

    std::string diff_a, diff_b;
    auto* diff = app.add_subcommand("facts-diff", "Compare two facts files");
    diff->add_option("first", diff_a, "Facts file")->required();
    diff->add_option("second", diff_b, "Facts file")->required();

    std::string validate_table;
    auto* val = app.add_subcommand("validate", "Run the character table checks");
    val->add_option("table", validate_table, "Table")->required();

    std::string                closure_amb = "monster";
    std::vector<std::string>   closure_seeds;
    std::vector<std::uint32_t> closure_orders;
    auto* closure = app.add_subcommand("closure", "Classes forced by seed classes and power maps");
    closure->add_option("--amb", closure_amb, "Ambient table")->capture_default_str();
    closure->add_option("--seed", closure_seeds, "Seed class label (repeatable)")->required();
    closure->add_option("--orders", closure_orders, "Further element orders the subgroup contains")
        ->delimiter(',');

    try {
      app.parse(argc, argv);
    } catch (CLI::ParseError const& e) {
      int const code = app.exit(e, out, err);
      return code == 0 ? ok : invalid_input;
    }

    if (*fuse) {
      return cmd_fuse(fa, out, err);
    }
    if (*identify) {
      return cmd_identify(ia, out, err);
    }
    if (*verify) {
      return cmd_verify_models(only, out, err);
    }
    if (*diff) {
      return cmd_facts_diff(diff_a, diff_b, out, err);
    }
    if (*val) {
      return cmd_validate(validate_table, out, err);
    }
    return cmd_closure(closure_amb, closure_seeds, closure_orders, out, err);
  }

}  // namespace ctfuse::cli
