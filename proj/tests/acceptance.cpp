// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.
// Seed 0 corpus; FORGE_ORACLE_BOUND is honoured.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "forge/harness/verify.hpp"

using namespace forge::harness;

namespace {

struct Verdict {
    bool ok;
    std::string note;
};

int failures = 0;

void criterion(const char* name, double limit_seconds, const std::function<Verdict()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
        v = body();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    const double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (limit_seconds > 0 && t > limit_seconds) {
        v.ok = false;
        v.note += " (over the " + std::to_string(static_cast<int>(limit_seconds)) + "s limit)";
    }
    failures += !v.ok;
    std::printf("%s %s [%.2fs] %s\n", v.ok ? "PASS" : "FAIL", name, t, v.note.c_str());
    std::fflush(stdout);
}

std::string summary(const Report& r)
{
    return "pass " + std::to_string(r.count(Outcome::Pass)) + " fail " + std::to_string(r.count(Outcome::Fail))
           + " skip " + std::to_string(r.count(Outcome::Skip));
}

std::string first_failure(const Report& r)
{
    for (const CaseResult& c : r.cases)
        if (c.outcome == Outcome::Fail)
            return "; first failure " + c.name + ": " + c.detail;
    return {};
}

Verdict from_report(const Report& r, int min_pass)
{
    const bool ok = r.ok() && r.count(Outcome::Pass) >= min_pass;
    std::string note = summary(r) + ", need " + std::to_string(min_pass) + " passing";
    return {ok, note + first_failure(r)};
}

const CaseResult* find_case(const Report& r, const std::string& name)
{
    for (const CaseResult& c : r.cases)
        if (c.name == name)
            return &c;
    return nullptr;
}

Verdict from_case(const Report& r, const std::string& name)
{
    const CaseResult* c = find_case(r, name);
    if (!c)
        return {false, "case " + name + " missing"};
    std::string note;
    for (const auto& [k, v] : c->data)
        note += k + "=" + v + " ";
    if (!c->detail.empty())
        note += "detail: " + c->detail;
    return {c->outcome == Outcome::Pass, note};
}

}  // namespace

int main()
{
    const Corpus corpus = gen_corpus(0);
    const CampaignParams params;
    std::printf("corpus seed 0, %zu members\n", corpus.members.size());

    criterion("t_X is an isomorphism for regular X", 120, [&] {
        return from_report(verify_main_theorem(corpus, params), 30);
    });
    criterion("D Sd^2 Y is isomorphic to B Sd Y", 300, [&] {
        return from_report(verify_corollary(corpus, params), 15);
    });
    const Report examples = run_counterexamples(params);
    criterion("cylinder reduction not surjective in degree 3", 0,
              [&] { return from_case(examples, "non-surjective-cr"); });
    criterion("dcr not injective in degrees 1 and 2, sibling 2-simplices", 0,
              [&] { return from_case(examples, "non-injective-dcr"); });
    criterion("dcr is an isomorphism for representing maps of regular X", 300, [&] {
        return from_report(verify_representing_cylinders(corpus, params), 100);
    });
    criterion("desingularized cones are reduced cylinders", 0, [&] {
        // 1 + 1 + 2 + 5 + 16 + 63 classes of posets on at most 5 elements.
        return from_report(verify_cones(params), 88);
    });
    criterion("zipper and oracle agree", 0, [&] {
        return from_report(verify_oracle_agreement(corpus, corpus.seed, params), 50);
    });
    criterion("regularity battery", 0, [&] {
        return from_report(verify_regularity_battery(corpus, corpus.seed, params), 5);
    });
    criterion("structural lemmas", 0, [&] {
        return from_report(verify_structural_lemmas(corpus, corpus.seed, params), 8);
    });
    return failures == 0 ? 0 : 1;
}
