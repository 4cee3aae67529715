#include "mailmine/learn.hpp"

#include "mailmine/errors.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mailmine {

namespace {

void collect_rules(const DecisionTree& tree, int32_t node, std::vector<RuleCondition>& path,
                   std::vector<Rule>& out) {
    const TreeNode& nd = tree.nodes[static_cast<size_t>(node)];
    if (nd.is_leaf()) {
        out.push_back(Rule{path, nd.label});
        return;
    }
    const std::string& name = tree.feature_names[static_cast<size_t>(nd.feature)];
    path.push_back(RuleCondition{name, true, nd.threshold});
    collect_rules(tree, nd.left, path, out);
    path.back().less = false;
    collect_rules(tree, nd.right, path, out);
    path.pop_back();
}

bool is_currency(const RuleSet& rs, const std::string& feature) {
    for (const auto& f : rs.currency_features)
        if (f == feature) return true;
    return false;
}

std::string format_plain(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string format_currency(double v) {
    // $1,170,000 — rounded to whole dollars, comma-grouped
    long long whole = std::llround(v);
    char digits[32];
    std::snprintf(digits, sizeof digits, "%lld", whole < 0 ? -whole : whole);
    std::string grouped;
    size_t len = std::char_traits<char>::length(digits);
    for (size_t i = 0; i < len; ++i) {
        if (i > 0 && (len - i) % 3 == 0) grouped.push_back(',');
        grouped.push_back(digits[i]);
    }
    return std::string(whole < 0 ? "-$" : "$") + grouped;
}

} // namespace

RuleSet extract_rules(const DecisionTree& tree) {
    std::vector<Rule> all;
    std::vector<RuleCondition> path;
    collect_rules(tree, 0, path, all);

    RuleSet rs;
    rs.positive_name = tree.positive_name;
    rs.negative_name = tree.negative_name;
    for (const auto& r : all)
        if (r.label == 0) rs.rules.push_back(r);
    for (const auto& r : all)
        if (r.label == 1) rs.rules.push_back(r);
    return rs;
}

bool RuleSet::matches(const Rule& rule, const std::map<std::string, double>& features) const {
    for (const auto& cond : rule.conditions) {
        auto it = features.find(cond.feature);
        double v = it == features.end() ? 0.0 : it->second;
        if (cond.less ? !(v < cond.threshold) : !(v >= cond.threshold)) return false;
    }
    return true;
}

int apply_ruleset(const RuleSet& rs, const std::map<std::string, double>& features) {
    for (const auto& rule : rs.rules)
        if (rs.matches(rule, features)) return rule.label;
    if (rs.default_label) return *rs.default_label;
    throw InputError("apply_ruleset: no rule matched and the rule set has no default label");
}

RuleMatcher::RuleMatcher(const RuleSet& rs, const std::vector<std::string>& feature_names) {
    default_label_ = rs.default_label;
    rules_.reserve(rs.rules.size());
    for (const auto& rule : rs.rules) {
        BoundRule bound;
        bound.label = rule.label;
        for (const auto& cond : rule.conditions) {
            int32_t idx = -1;
            for (size_t i = 0; i < feature_names.size(); ++i)
                if (feature_names[i] == cond.feature) {
                    idx = static_cast<int32_t>(i);
                    break;
                }
            bound.conditions.push_back(BoundCondition{idx, cond.less, cond.threshold});
        }
        rules_.push_back(std::move(bound));
    }
}

int RuleMatcher::apply(const std::vector<double>& features) const {
    for (const auto& rule : rules_) {
        bool ok = true;
        for (const auto& c : rule.conditions) {
            double v = (c.feature >= 0 && static_cast<size_t>(c.feature) < features.size())
                           ? features[static_cast<size_t>(c.feature)]
                           : 0.0; // absent features count as zero
            if (c.less ? !(v < c.threshold) : !(v >= c.threshold)) {
                ok = false;
                break;
            }
        }
        if (ok) return rule.label;
    }
    if (default_label_) return *default_label_;
    throw InputError("RuleMatcher: no rule matched and the rule set has no default label");
}

std::string render_ruleset(const RuleSet& rs) {
    std::ostringstream out;
    int last_label = -1;
    size_t number = 0;
    for (const auto& rule : rs.rules) {
        ++number;
        if (rule.label != last_label) {
            if (last_label != -1) out << "\n";
            auto hdr = rs.group_headers.find(rule.label);
            if (hdr != rs.group_headers.end()) {
                out << hdr->second << "\n";
            } else {
                std::string name = rule.label == 1 ? rs.positive_name : rs.negative_name;
                if (!name.empty())
                    name[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(name[0])));
                out << name << " classification\n";
            }
            last_label = rule.label;
        }
        out << "Rule " << number << ": when ";
        if (rule.conditions.empty()) {
            out << "always";
        } else {
            for (size_t i = 0; i < rule.conditions.size(); ++i) {
                const auto& c = rule.conditions[i];
                if (i > 0) out << " AND ";
                out << c.feature << (c.less ? " < " : " >= ")
                    << (is_currency(rs, c.feature) ? format_currency(c.threshold)
                                                   : format_plain(c.threshold));
            }
        }
        out << " then " << (rule.label == 1 ? rs.positive_name : rs.negative_name) << " ("
            << rule.label << ")\n";
    }
    if (rs.default_label) {
        out << "\nDefault: "
            << (*rs.default_label == 1 ? rs.positive_name : rs.negative_name) << " ("
            << *rs.default_label << ")\n";
    }
    return out.str();
}

} // namespace mailmine
