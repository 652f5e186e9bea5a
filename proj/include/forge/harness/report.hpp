// Campaign results as a stable key-value text tree.
//
//   report <title>
//     summary pass <n> fail <n> skip <n>
//     case <name>
//       outcome pass|fail|skip
//       seconds <t>            (only when timings are requested)
//       <key> <value>          (zero or more, in insertion order)
//       detail <text>          (failures and skips)
//       dump                   (failures only: the witness in SSET, POSET
//         <line>                or PMAP text, indented two more spaces)
#pragma once

#include <chrono>
#include <exception>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace forge::harness {

enum class Outcome { Pass, Fail, Skip };

inline const char* to_string(Outcome o)
{
    switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Skip: return "skip";
    }
    return "?";
}

struct CaseResult {
    std::string name;
    Outcome outcome = Outcome::Pass;
    double seconds = 0;
    std::vector<std::pair<std::string, std::string>> data;
    std::string detail;
    std::string dump;

    CaseResult& put(std::string key, std::string value)
    {
        data.emplace_back(std::move(key), std::move(value));
        return *this;
    }

    template <class Range>
    CaseResult& put_counts(std::string key, const Range& counts)
    {
        std::string v;
        for (auto c : counts)
            v += (v.empty() ? "" : " ") + std::to_string(c);
        return put(std::move(key), v.empty() ? "-" : v);
    }

    void skip(std::string why)
    {
        outcome = Outcome::Skip;
        detail = std::move(why);
    }

    void fail(std::string why)
    {
        outcome = Outcome::Fail;
        if (!detail.empty())
            detail += "; ";
        detail += std::move(why);
    }
};

struct Report {
    std::string title;
    std::vector<CaseResult> cases;

    int count(Outcome o) const
    {
        int n = 0;
        for (const CaseResult& c : cases)
            n += c.outcome == o;
        return n;
    }
    bool ok() const { return count(Outcome::Fail) == 0; }

    double seconds() const
    {
        double t = 0;
        for (const CaseResult& c : cases)
            t += c.seconds;
        return t;
    }

    void append(const Report& other)
    {
        cases.insert(cases.end(), other.cases.begin(), other.cases.end());
    }

    std::string to_text(bool timings = false) const
    {
        std::ostringstream out;
        out << "report " << title << "\n";
        out << "  summary pass " << count(Outcome::Pass) << " fail " << count(Outcome::Fail) << " skip "
            << count(Outcome::Skip) << "\n";
        for (const CaseResult& c : cases) {
            out << "  case " << c.name << "\n";
            out << "    outcome " << to_string(c.outcome) << "\n";
            if (timings)
                out << "    seconds " << c.seconds << "\n";
            for (const auto& [k, v] : c.data)
                out << "    " << k << " " << v << "\n";
            if (!c.detail.empty())
                out << "    detail " << c.detail << "\n";
            if (!c.dump.empty()) {
                out << "    dump\n";
                std::istringstream lines(c.dump);
                for (std::string line; std::getline(lines, line);)
                    out << "      " << line << "\n";
            }
        }
        return out.str();
    }
};

/// Runs body on a fresh case, timing it and turning exceptions into failures.
template <class Body>
CaseResult run_case(std::string name, Body&& body)
{
    CaseResult c;
    c.name = std::move(name);
    const auto start = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.fail(std::string("exception: ") + e.what());
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return c;
}

}  // namespace forge::harness
