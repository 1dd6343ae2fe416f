// weakarith: command-line front end.
//
// Exit status: 0 success, 1 domain failure, 2 usage or input-format error.

#include "weakarith.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

using namespace weakarith;
using json = nlohmann::ordered_json;

namespace {

/// Errors raised while reading inputs are format errors (exit 2); after
/// `inputs_loaded` they are domain failures (exit 1).
bool inputs_loaded = false;

std::string load_text(const std::string& arg) {
    std::string t = detail::trim(arg);
    if (!t.empty() && t.front() == '(') return arg;
    if (std::filesystem::exists(arg)) return read_text_file(arg);
    return arg;
}

std::vector<Formula> load_formulas(const std::string& arg, const Language& lang) {
    auto fs = parse_formulas(load_text(arg), lang);
    if (fs.empty()) throw Error("no formula in " + arg);
    return fs;
}

Formula load_sentence(const std::string& arg, const Language& lang) {
    auto fs = load_formulas(arg, lang);
    if (fs.size() != 1) throw Error("expected exactly one formula in " + arg);
    return fs.front();
}

Translation load_translation(const std::string& arg) {
    if (auto tr = builtin_translation(arg)) return *tr;
    if (std::filesystem::exists(arg)) return parse_translation(read_text_file(arg));
    throw Error("unknown translation '" + arg + "' (not a built-in name or a file)");
}

std::string set_text(const std::vector<std::uint64_t>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out + "}";
}

template <class Set>
json to_array(const Set& s) {
    json a = json::array();
    for (auto x : s) a.push_back(x);
    return a;
}

DeciderHandle make_decider(const std::string& name, const OraclePair& pair, const Theory& t, std::uint64_t stage,
                           std::uint64_t budget) {
    if (name == "table") return table_decider(pair, stage);
    if (name == "proof-search") return proof_search_decider(t, budget);
    if (name == "equivalence") return equivalence_decider(pair, stage);
    throw Error("unknown decider '" + name + "' (table, proof-search, equivalence)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weakarith: weak arithmetic, interpretability and essential undecidability workbench"};
    app.require_subcommand(1);
    app.fallthrough();
    bool summary = false;
    std::uint64_t seed = 1;
    app.add_flag("--summary", summary, "print a machine-readable JSON summary as the last line");
    app.add_option("--seed", seed, "seed for randomized helpers (default 1)");

    json sum;
    int status = 0;

    // parse
    std::string parse_input, parse_theory = "R";
    auto* parse = app.add_subcommand("parse", "parse formulas, print them back with their hierarchy class and rank");
    parse->add_option("input", parse_input, "formula file or inline s-expression")->required();
    parse->add_option("--theory", parse_theory, "theory id whose language is used (default R)");
    parse->callback([&] {
        Theory t = theory_from_id(parse_theory);
        auto fs = load_formulas(parse_input, t.language);
        inputs_loaded = true;
        for (const auto& f : fs)
            std::cout << print_formula(f) << "\t" << classify_formula(f, &t.language).str() << "\trank=" << quantifier_rank(f) << "\n";
        sum = {{"verb", "parse"}, {"formulas", fs.size()}};
    });

    // axioms
    std::string ax_theory;
    std::uint64_t ax_count = 10, ax_start = 0;
    bool ax_indexed = false;
    auto* axioms_cmd = app.add_subcommand("axioms", "enumerate axioms of a catalog theory");
    axioms_cmd->add_option("theory", ax_theory, "theory id (R, R0, R1, R2, Q, Q+, Q-, PA-, TC, AS, T-set, RepPRF, U:<pair>, E:<pair>, product:<id>,<id>)")->required();
    axioms_cmd->add_option("--count", ax_count, "number of axioms (default 10)");
    axioms_cmd->add_option("--start", ax_start, "first index (default 0)");
    axioms_cmd->add_flag("--indexed", ax_indexed, "prefix each axiom with its index");
    axioms_cmd->callback([&] {
        Theory t = theory_from_id(ax_theory);
        inputs_loaded = true;
        std::uint64_t end = ax_start + ax_count;
        if (t.finite_size) end = std::min<std::uint64_t>(end, *t.finite_size);
        for (std::uint64_t i = ax_start; i < end; ++i) {
            if (ax_indexed) std::cout << i << "\t";
            std::cout << print_formula(t.axiom_of(i)) << "\n";
        }
        sum = {{"verb", "axioms"}, {"theory", t.name}, {"printed", end > ax_start ? end - ax_start : 0}};
    });

    // translate
    std::string tr_name, tr_input;
    auto* translate = app.add_subcommand("translate", "apply a translation to formulas of its source language");
    translate->add_option("--translation", tr_name, "built-in translation name or translation file")->required();
    translate->add_option("input", tr_input, "formula file or inline s-expression")->required();
    translate->callback([&] {
        Translation tr = load_translation(tr_name);
        auto fs = load_formulas(tr_input, tr.source);
        inputs_loaded = true;
        for (const auto& f : fs) std::cout << print_formula(translate_formula(tr, f)) << "\n";
        sum = {{"verb", "translate"}, {"translation", tr.name}, {"formulas", fs.size()}};
    });

    // obligations
    std::string ob_name;
    std::size_t ob_count = 10;
    auto* obligations_cmd = app.add_subcommand("obligations", "list the sentences a translation must make true in the target");
    obligations_cmd->add_option("--translation", ob_name, "built-in translation name or translation file")->required();
    obligations_cmd->add_option("--count", ob_count, "number of source axioms (default 10)");
    obligations_cmd->callback([&] {
        Translation tr = load_translation(ob_name);
        Theory src = theory_from_id(tr.source_id);
        inputs_loaded = true;
        auto obs = obligations(tr, src, ob_count);
        for (const auto& ob : obs)
            std::cout << obligation_kind_name(ob.kind) << "\t" << ob.label << "\t" << print_formula(ob.sentence) << "\n";
        sum = {{"verb", "obligations"}, {"translation", tr.name}, {"obligations", obs.size()}};
    });

    // verify
    std::string vf_name, vf_model;
    std::size_t vf_count = 10;
    auto* verify = app.add_subcommand("verify", "check a translation's obligations in a finite target structure");
    verify->add_option("--translation", vf_name, "built-in translation name or translation file")->required();
    verify->add_option("--model", vf_model, "structure file")->required();
    verify->add_option("--count", vf_count, "number of source axioms (default 10)");
    verify->callback([&] {
        Translation tr = load_translation(vf_name);
        Theory src = theory_from_id(tr.source_id);
        FiniteStructure m = parse_structure(read_text_file(vf_model));
        inputs_loaded = true;
        auto rep = verify_semantic(tr, src, m, vf_count);
        std::cout << "checked " << rep.checked << " failures " << rep.failures.size() << "\n";
        for (const auto& f : rep.failures) std::cout << "FAIL " << f.label << "\t" << print_formula(f.sentence) << "\n";
        sum = {{"verb", "verify"}, {"checked", rep.checked}, {"failures", rep.failures.size()}};
        if (!rep.ok()) status = 1;
    });

    // find-model
    std::string fm_axioms, fm_theory, fm_language;
    std::size_t fm_count = 10;
    int fm_max = 3, fm_min = 1;
    bool fm_no_prune = false, fm_local = false;
    auto* find_model_cmd = app.add_subcommand("find-model", "exhaustive finite model search, least model first");
    auto* fm_src = find_model_cmd->add_option("--axioms", fm_axioms, "file of sentences");
    find_model_cmd->add_option("--theory", fm_theory, "catalog theory id (uses its first --count axioms)")->excludes(fm_src);
    find_model_cmd->add_option("--language", fm_language, "theory id whose language parses --axioms (default: first that fits)");
    find_model_cmd->add_option("--count", fm_count, "axioms taken from --theory (default 10)");
    find_model_cmd->add_option("--max-size", fm_max, "largest universe size (default 3)")->check(CLI::Range(1, 64));
    find_model_cmd->add_option("--min-size", fm_min, "smallest universe size (default 1)")->check(CLI::Range(1, 64));
    find_model_cmd->add_flag("--no-prune", fm_no_prune, "visit every complete structure");
    find_model_cmd->add_flag("--prefixes", fm_local, "search every prefix of the axiom list (local finite satisfiability)");
    find_model_cmd->callback([&] {
        std::vector<Formula> axs;
        std::string label;
        if (!fm_theory.empty()) {
            Theory t = theory_from_id(fm_theory);
            axs = t.first(fm_count);
            label = t.name;
        } else if (!fm_axioms.empty()) {
            if (!fm_language.empty()) {
                axs = load_formulas(fm_axioms, theory_from_id(fm_language).language);
            } else {
                // No language given: take the first catalog language that parses the file.
                const std::vector<std::string> ids{"PA-", "Q-", "TC", "AS", "T-set", "U:finite A={} B={}",
                                                   "E:finite B={} C={}", "RepPRF"};
                for (std::size_t i = 0; i < ids.size(); ++i) {
                    try {
                        axs = load_formulas(fm_axioms, theory_from_id(ids[i]).language);
                        break;
                    } catch (const ParseError&) {
                        if (i + 1 == ids.size()) throw;
                    }
                }
            }
            label = fm_axioms;
        } else {
            throw CLI::RequiredError("--axioms or --theory");
        }
        inputs_loaded = true;
        if (fm_local) {
            auto rep = check_local_finsat(axs, fm_max, label);
            for (const auto& p : rep.prefixes) {
                std::cout << "prefix " << p.prefix_length << "\t";
                if (p.witness_size) std::cout << "witness size " << *p.witness_size << "\n";
                else std::cout << "no model ≤ " << fm_max << "\n";
            }
            if (rep.last_witness) std::cout << print_structure(*rep.last_witness);
            sum = {{"verb", "find-model"}, {"prefixes", rep.prefixes.size()}, {"failures", to_array(rep.failures())}};
            if (!rep.all_witnessed()) status = 1;
            return;
        }
        auto res = find_model(axs, fm_max, {fm_min, !fm_no_prune});
        if (res.model) std::cout << print_structure(*res.model);
        else std::cout << "no model ≤ " << fm_max << "\n";
        std::cout << "structures counted " << res.structures_counted.str() << "\n";
        sum = {{"verb", "find-model"},
               {"found", res.model.has_value()},
               {"size", res.model ? res.model->size : 0},
               {"counted", res.structures_counted.str()}};
        if (!res.model) status = 1;
    });

    // decide
    std::string dc_sentence, dc_pair;
    std::uint64_t dc_stage = 0;
    bool dc_witness = false;
    auto* decide_cmd = app.add_subcommand("decide", "decide a sentence over one equivalence relation E relative to a pair (B, C)");
    decide_cmd->add_option("--sentence", dc_sentence, "sentence file or inline s-expression")->required();
    decide_cmd->add_option("--pair", dc_pair, "pair text or pair file")->required();
    decide_cmd->add_option("--stage", dc_stage, "enumeration stage (enumerative pairs)");
    decide_cmd->add_flag("--witness", dc_witness, "print a satisfying and a falsifying admissible profile");
    decide_cmd->callback([&] {
        Formula f = load_sentence(dc_sentence, languages::equivalence());
        OraclePair pair = load_pair(dc_pair);
        inputs_loaded = true;
        auto st = decide(f, pair, dc_stage);
        std::cout << st.str() << "\n";
        if (dc_witness) {
            if (st.satisfying) std::cout << "satisfying " << print_profile(*st.satisfying) << "\n";
            if (st.falsifying) std::cout << "falsifying " << print_profile(*st.falsifying) << "\n";
        }
        sum = {{"verb", "decide"}, {"status", st.str()}, {"rank", quantifier_rank(f)}, {"admissible", st.admissible}};
    });

    // normal-form
    std::string nf_sentence;
    int nf_rank = -1;
    auto* nf_cmd = app.add_subcommand("normal-form", "disjunction over class-size profiles equivalent to a sentence over E");
    nf_cmd->add_option("--sentence", nf_sentence, "sentence file or inline s-expression")->required();
    nf_cmd->add_option("--rank", nf_rank, "profile rank (default: the sentence's quantifier rank)");
    nf_cmd->callback([&] {
        Formula f = load_sentence(nf_sentence, languages::equivalence());
        inputs_loaded = true;
        int r = nf_rank < 0 ? rank(f) : nf_rank;
        auto nf = normal_form(f, r);
        std::cout << print_normal_form(nf);
        sum = {{"verb", "normal-form"}, {"rank", r}, {"disjuncts", nf.disjuncts.size()}};
    });

    // enumerate-pair
    std::string ep_pair;
    std::uint64_t ep_stage = 0;
    auto* ep_cmd = app.add_subcommand("enumerate-pair", "print both sides of an oracle pair at a stage");
    ep_cmd->add_option("--pair", ep_pair, "pair text or pair file")->required();
    ep_cmd->add_option("--stage", ep_stage, "stage (default 0)");
    ep_cmd->callback([&] {
        OraclePair pair = load_pair(ep_pair);
        inputs_loaded = true;
        pair.check_disjoint(ep_stage);
        auto l = pair.left(ep_stage), r = pair.right(ep_stage);
        std::cout << "left  " << set_text(l) << "\n" << "right " << set_text(r) << "\n";
        sum = {{"verb", "enumerate-pair"}, {"stage", ep_stage}, {"left", to_array(l)}, {"right", to_array(r)}};
    });

    // run-machine
    std::string rm_program;
    std::string rm_index;
    std::uint64_t rm_input = 0, rm_budget = 1000;
    auto* rm_cmd = app.add_subcommand("run-machine", "run a counter machine with a step budget");
    auto* rm_prog_opt = rm_cmd->add_option("--program", rm_program, "program file");
    rm_cmd->add_option("--index", rm_index, "program index")->excludes(rm_prog_opt);
    rm_cmd->add_option("--input", rm_input, "input placed in r1 (default 0)");
    rm_cmd->add_option("--budget", rm_budget, "step budget (default 1000)");
    rm_cmd->callback([&] {
        Program p;
        if (!rm_program.empty()) p = parse_program(read_text_file(rm_program));
        else if (!rm_index.empty()) {
            if (!std::all_of(rm_index.begin(), rm_index.end(), ::isdigit)) throw Error("bad program index '" + rm_index + "'");
            p = decode_program(Natural(rm_index));
        } else
            throw CLI::RequiredError("--program or --index");
        inputs_loaded = true;
        Execution ex(p, rm_input);
        ex.run_until(rm_budget);
        std::cout << "index " << encode_program(p).str() << "\n";
        if (ex.halted()) std::cout << "halted after " << ex.steps() << " steps, output " << ex.output() << "\n";
        else std::cout << "running after " << ex.steps() << " steps\n";
        sum = {{"verb", "run-machine"}, {"halted", ex.halted()}, {"steps", ex.steps()}};
        if (ex.halted()) sum["output"] = ex.output();
    });

    // check-proof
    std::string cp_proof, cp_theory;
    bool cp_verbose = false;
    auto* cp_cmd = app.add_subcommand("check-proof", "check a Hilbert-style proof against a theory");
    cp_cmd->add_option("--proof", cp_proof, "proof file")->required();
    cp_cmd->add_option("--theory", cp_theory, "theory id")->required();
    cp_cmd->add_flag("--verbose", cp_verbose, "print the formula of every step");
    cp_cmd->callback([&] {
        Theory t = theory_from_id(cp_theory);
        Proof p = parse_proof(read_text_file(cp_proof), t.language);
        inputs_loaded = true;
        try {
            auto lines = check_proof_steps(p, t);
            if (lines.empty()) throw InvalidStep(0, "empty proof");
            if (cp_verbose)
                for (std::size_t i = 0; i < lines.size(); ++i) std::cout << i << "\t" << print_formula(lines[i]) << "\n";
            std::cout << "valid " << print_formula(lines.back()) << "\n";
            sum = {{"verb", "check-proof"}, {"valid", true}, {"steps", p.size()}};
        } catch (const InvalidStep& e) {
            std::cout << e.what() << "\n";
            sum = {{"verb", "check-proof"}, {"valid", false}, {"step", e.index()}};
            status = 1;
        }
    });

    // search-proof
    std::string sp_theory, sp_goal;
    std::uint64_t sp_budget = 1000;
    SearchOptions sp_opts;
    auto* sp_cmd = app.add_subcommand("search-proof", "bounded forward proof search");
    sp_cmd->add_option("--theory", sp_theory, "theory id")->required();
    sp_cmd->add_option("--goal", sp_goal, "goal file or inline s-expression")->required();
    sp_cmd->add_option("--budget", sp_budget, "number of derived formulas allowed (default 1000)");
    sp_cmd->add_option("--numeral-bound", sp_opts.numeral_bound, "numerals 0..k are instantiation candidates (default 3)");
    sp_cmd->add_option("--axiom-window", sp_opts.axiom_window, "axioms added before saturation (default 64)");
    sp_cmd->callback([&] {
        Theory t = theory_from_id(sp_theory);
        Formula goal = load_sentence(sp_goal, t.language);
        inputs_loaded = true;
        auto res = search_proof(t, goal, sp_budget, sp_opts);
        if (res.proof) {
            check_proof(*res.proof, t);
            std::cout << print_proof(*res.proof);
        } else {
            std::cout << "no proof within budget " << sp_budget << "\n";
            status = 1;
        }
        sum = {{"verb", "search-proof"}, {"found", res.proof.has_value()}, {"events", res.events},
               {"steps", res.proof ? res.proof->size() : 0}};
    });

    // godel
    std::string gd_encode, gd_decode, gd_theory = "R";
    auto* gd_cmd = app.add_subcommand("godel", "Godel numbering of formulas");
    auto* gd_enc = gd_cmd->add_option("--encode", gd_encode, "formula file or inline s-expression");
    auto* gd_dec = gd_cmd->add_option("--decode", gd_decode, "decimal code");
    gd_enc->excludes(gd_dec);
    gd_cmd->add_option("--theory", gd_theory, "theory id whose language is used (default R)");
    gd_cmd->callback([&] {
        Theory t = theory_from_id(gd_theory);
        if (!gd_encode.empty()) {
            auto fs = load_formulas(gd_encode, t.language);
            inputs_loaded = true;
            for (const auto& f : fs) std::cout << godel_encode(f).value.str() << "\n";
            sum = {{"verb", "godel"}, {"encoded", fs.size()}};
        } else if (!gd_decode.empty()) {
            Formula f = godel_decode(parse_godel_code(gd_decode), t.language);
            inputs_loaded = true;
            std::cout << print_formula(f) << "\n";
            sum = {{"verb", "godel"}, {"decoded", 1}};
        } else {
            throw CLI::RequiredError("--encode or --decode");
        }
    });

    // independence
    std::string in_pair, in_decider = "table";
    std::uint64_t in_nmax = 10, in_stage = 0, in_budget = 200;
    auto* in_cmd = app.add_subcommand("independence", "find n with neither P(n) nor not P(n) decided");
    in_cmd->add_option("--pair", in_pair, "pair text or pair file")->required();
    in_cmd->add_option("--decider", in_decider, "table or proof-search (default table)");
    in_cmd->add_option("--n-max", in_nmax, "largest n examined (default 10)");
    in_cmd->add_option("--stage", in_stage, "enumeration stage (default 0)");
    in_cmd->add_option("--budget", in_budget, "proof-search budget (default 200)");
    in_cmd->callback([&] {
        OraclePair pair = load_pair(in_pair);
        Theory u = theory_U(pair);
        DeciderHandle d = make_decider(in_decider, pair, u, in_stage, in_budget);
        inputs_loaded = true;
        try {
            auto rep = independence_search(pair, d, in_nmax, in_stage);
            std::cout << print_independence_report(rep);
            sum = {{"verb", "independence"}, {"X", to_array(rep.X)}, {"Y", to_array(rep.Y)}};
            if (rep.witness) sum["witness"] = *rep.witness;
            else sum["witness"] = nullptr;
            if (!rep.witness) status = 1;
        } catch (const DeciderInconsistent& e) {
            std::cout << e.what() << "\n";
            sum = {{"verb", "independence"}, {"inconsistent", true}};
            status = 1;
        }
    });

    // stress
    std::string st_family = "u", st_pair, st_decider = "table";
    std::uint64_t st_count = 10, st_stage = 0, st_budget = 200;
    auto* st_cmd = app.add_subcommand("stress", "drive a decider over P(n) or Phi_n and list unanswered or inconsistent rows");
    st_cmd->add_option("--family", st_family, "u (P(n) over U) or e (Phi_n over E)")->check(CLI::IsMember({"u", "e"}));
    st_cmd->add_option("--pair", st_pair, "pair text or pair file")->required();
    st_cmd->add_option("--decider", st_decider, "table, proof-search or equivalence (default table)");
    st_cmd->add_option("--count", st_count, "number of sentences (default 10)");
    st_cmd->add_option("--stage", st_stage, "enumeration stage (default 0)");
    st_cmd->add_option("--budget", st_budget, "proof-search budget (default 200)");
    st_cmd->callback([&] {
        OraclePair pair = load_pair(st_pair);
        Family fam = st_family == "u" ? Family::u : Family::e;
        Theory t = fam == Family::u ? theory_U(pair) : theory_E(pair);
        DeciderHandle d = make_decider(st_decider, pair, t, st_stage, st_budget);
        inputs_loaded = true;
        auto rep = stress(fam, pair, st_stage, d, st_count);
        std::cout << print_stress_report(rep);
        sum = {{"verb", "stress"}, {"listed", to_array(rep.listed())}};
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return inputs_loaded ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    if (summary) {
        sum["exit"] = status;
        sum["seed"] = seed;
        std::cout << sum.dump() << "\n";
    }
    return status;
}
