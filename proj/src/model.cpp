#include "mailmine/model.hpp"

#include "mailmine/errors.hpp"
#include "mailmine/poi.hpp"

#include <algorithm>
#include <fstream>

namespace mailmine {

using nlohmann::json;

int Model::predict(const std::vector<double>& features) const {
    switch (kind) {
        case Kind::Cart: return tree.predict(features);
        case Kind::Forest: return forest.predict(features);
        case Kind::Knn: return knn_predict(knn_train, knn_k, features);
        case Kind::Ruleset: return RuleMatcher(ruleset, feature_names).apply(features);
    }
    throw InternalError("Model::predict: bad kind");
}

double Model::score(const std::vector<double>& features) const {
    switch (kind) {
        case Kind::Cart: return tree.predict_proba(features);
        case Kind::Forest: return forest.predict_proba(features);
        default: return static_cast<double>(predict(features));
    }
}

RuleSet Model::rules() const {
    if (kind == Kind::Ruleset) return ruleset;
    if (kind == Kind::Cart) return extract_rules(tree);
    throw InputError("rules are only available for decision trees and rule sets");
}

namespace {

json node_to_json(const DecisionTree& tree, int32_t index) {
    const TreeNode& node = tree.nodes[static_cast<size_t>(index)];
    json j;
    j["counts"] = {node.counts[0], node.counts[1]};
    if (node.is_leaf()) {
        j["leaf"] = {{"label", node.label}, {"counts", {node.counts[0], node.counts[1]}}};
        return j;
    }
    j["feature"] = tree.feature_names[static_cast<size_t>(node.feature)];
    j["threshold"] = node.threshold;
    j["left"] = node_to_json(tree, node.left);
    j["right"] = node_to_json(tree, node.right);
    return j;
}

int32_t node_from_json(const json& j, DecisionTree& tree) {
    int32_t index = static_cast<int32_t>(tree.nodes.size());
    tree.nodes.push_back(TreeNode{});
    if (j.contains("counts")) {
        tree.nodes[static_cast<size_t>(index)].counts[0] = j["counts"][0].get<int64_t>();
        tree.nodes[static_cast<size_t>(index)].counts[1] = j["counts"][1].get<int64_t>();
    }
    if (j.contains("leaf")) {
        const json& leaf = j["leaf"];
        tree.nodes[static_cast<size_t>(index)].label = leaf["label"].get<int>();
        tree.nodes[static_cast<size_t>(index)].counts[0] = leaf["counts"][0].get<int64_t>();
        tree.nodes[static_cast<size_t>(index)].counts[1] = leaf["counts"][1].get<int64_t>();
        return index;
    }
    std::string feature = j["feature"].get<std::string>();
    int32_t fidx = -1;
    for (size_t i = 0; i < tree.feature_names.size(); ++i)
        if (tree.feature_names[i] == feature) fidx = static_cast<int32_t>(i);
    if (fidx < 0) throw InputError("model: tree references unknown feature '" + feature + "'");
    tree.nodes[static_cast<size_t>(index)].feature = fidx;
    tree.nodes[static_cast<size_t>(index)].threshold = j["threshold"].get<double>();
    int32_t left = node_from_json(j["left"], tree);
    tree.nodes[static_cast<size_t>(index)].left = left;
    int32_t right = node_from_json(j["right"], tree);
    tree.nodes[static_cast<size_t>(index)].right = right;
    return index;
}

json tree_to_json(const DecisionTree& tree) { return node_to_json(tree, 0); }

DecisionTree tree_from_json(const json& j, const std::vector<std::string>& feature_names,
                            const std::string& positive, const std::string& negative) {
    DecisionTree tree;
    tree.feature_names = feature_names;
    tree.positive_name = positive;
    tree.negative_name = negative;
    node_from_json(j, tree);
    return tree;
}

json ruleset_to_json(const RuleSet& rs) {
    json j;
    json rules = json::array();
    for (const auto& rule : rs.rules) {
        json conds = json::array();
        for (const auto& c : rule.conditions)
            conds.push_back({{"feature", c.feature},
                             {"op", c.less ? "<" : ">="},
                             {"threshold", c.threshold}});
        rules.push_back({{"conditions", conds}, {"label", rule.label}});
    }
    j["rules"] = rules;
    if (rs.default_label) j["default_label"] = *rs.default_label;
    if (!rs.group_headers.empty()) {
        json headers = json::object();
        for (const auto& [label, text] : rs.group_headers)
            headers[std::to_string(label)] = text;
        j["group_headers"] = headers;
    }
    if (!rs.currency_features.empty()) j["currency_features"] = rs.currency_features;
    return j;
}

RuleSet ruleset_from_json(const json& j, const std::string& positive,
                          const std::string& negative) {
    RuleSet rs;
    rs.positive_name = positive;
    rs.negative_name = negative;
    for (const auto& rj : j.at("rules")) {
        Rule rule;
        rule.label = rj.at("label").get<int>();
        for (const auto& cj : rj.at("conditions")) {
            RuleCondition c;
            c.feature = cj.at("feature").get<std::string>();
            c.less = cj.at("op").get<std::string>() == "<";
            c.threshold = cj.at("threshold").get<double>();
            rule.conditions.push_back(std::move(c));
        }
        rs.rules.push_back(std::move(rule));
    }
    if (j.contains("default_label")) rs.default_label = j["default_label"].get<int>();
    if (j.contains("group_headers"))
        for (auto it = j["group_headers"].begin(); it != j["group_headers"].end(); ++it)
            rs.group_headers[std::stoi(it.key())] = it.value().get<std::string>();
    if (j.contains("currency_features"))
        rs.currency_features = j["currency_features"].get<std::vector<std::string>>();
    return rs;
}

const char* kind_name(Model::Kind kind) {
    switch (kind) {
        case Model::Kind::Cart: return "cart";
        case Model::Kind::Forest: return "forest";
        case Model::Kind::Knn: return "knn";
        case Model::Kind::Ruleset: return "ruleset";
    }
    return "unknown";
}

} // namespace

json model_to_json(const Model& model) {
    json j;
    j["format"] = "mailmine-model";
    j["version"] = 1;
    j["kind"] = kind_name(model.kind);
    j["feature_names"] = model.feature_names;
    j["positive_name"] = model.positive_name;
    j["negative_name"] = model.negative_name;

    switch (model.kind) {
        case Model::Kind::Cart:
            j["tree"] = tree_to_json(model.tree);
            break;
        case Model::Kind::Forest: {
            json trees = json::array();
            for (const auto& t : model.forest.trees) trees.push_back(tree_to_json(t));
            j["trees"] = trees;
            j["mtry"] = model.forest.mtry;
            j["seed"] = model.forest.seed;
            break;
        }
        case Model::Kind::Knn: {
            j["knn"] = {{"k", model.knn_k},
                        {"rows", model.knn_train.rows},
                        {"labels", model.knn_train.labels}};
            break;
        }
        case Model::Kind::Ruleset:
            j["ruleset"] = ruleset_to_json(model.ruleset);
            break;
    }

    if (model.vocabulary) {
        j["vocabulary"] = {{"terms", model.vocabulary->terms},
                           {"doc_freq", model.vocabulary->doc_freq},
                           {"n_docs", model.vocabulary->n_docs}};
        std::vector<std::string> stopwords(model.pipeline.stopwords.begin(),
                                           model.pipeline.stopwords.end());
        std::sort(stopwords.begin(), stopwords.end());
        j["pipeline"] = {{"lowercase", model.pipeline.lowercase},
                         {"strip_punct", model.pipeline.strip_punct},
                         {"strip_numbers", model.pipeline.strip_numbers},
                         {"stem", model.pipeline.stem},
                         {"stopwords", stopwords}};
        j["tfidf"] = model.use_tfidf;
    }
    if (!model.metrics.empty()) j["metrics"] = model.metrics;
    return j;
}

Model model_from_json(const json& j) {
    if (!j.is_object() || j.value("format", "") != "mailmine-model")
        throw InputError("model file: not a mailmine model");
    Model model;
    model.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    model.positive_name = j.value("positive_name", "positive");
    model.negative_name = j.value("negative_name", "negative");

    std::string kind = j.at("kind").get<std::string>();
    if (kind == "cart") {
        model.kind = Model::Kind::Cart;
        model.tree = tree_from_json(j.at("tree"), model.feature_names, model.positive_name,
                                    model.negative_name);
    } else if (kind == "forest") {
        model.kind = Model::Kind::Forest;
        for (const auto& tj : j.at("trees"))
            model.forest.trees.push_back(tree_from_json(tj, model.feature_names,
                                                        model.positive_name,
                                                        model.negative_name));
        model.forest.mtry = j.value("mtry", 0);
        model.forest.seed = j.value("seed", uint64_t{0});
    } else if (kind == "knn") {
        model.kind = Model::Kind::Knn;
        model.knn_k = j.at("knn").at("k").get<int>();
        model.knn_train.feature_names = model.feature_names;
        model.knn_train.rows = j.at("knn").at("rows").get<std::vector<std::vector<double>>>();
        model.knn_train.labels = j.at("knn").at("labels").get<std::vector<int>>();
        model.knn_train.positive_name = model.positive_name;
        model.knn_train.negative_name = model.negative_name;
    } else if (kind == "ruleset") {
        model.kind = Model::Kind::Ruleset;
        model.ruleset =
            ruleset_from_json(j.at("ruleset"), model.positive_name, model.negative_name);
    } else {
        throw InputError("model file: unknown kind '" + kind + "'");
    }

    if (j.contains("vocabulary")) {
        Vocabulary vocab;
        vocab.terms = j["vocabulary"].at("terms").get<std::vector<std::string>>();
        vocab.doc_freq = j["vocabulary"].at("doc_freq").get<std::vector<int64_t>>();
        vocab.n_docs = j["vocabulary"].at("n_docs").get<int64_t>();
        model.vocabulary = std::move(vocab);
        const json& p = j.at("pipeline");
        model.pipeline.lowercase = p.at("lowercase").get<bool>();
        model.pipeline.strip_punct = p.at("strip_punct").get<bool>();
        model.pipeline.strip_numbers = p.at("strip_numbers").get<bool>();
        model.pipeline.stem = p.at("stem").get<bool>();
        for (const auto& s : p.at("stopwords"))
            model.pipeline.stopwords.insert(s.get<std::string>());
        model.use_tfidf = j.value("tfidf", false);
    }
    if (j.contains("metrics")) model.metrics = j["metrics"];
    return model;
}

void save_model(const Model& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write model file '" + path + "'");
    out << model_to_json(model).dump(2) << "\n";
    if (!out) throw InputError("short write on model file '" + path + "'");
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("model file '" + path + "': " + e.what());
    }
    return model_from_json(j);
}

} // namespace mailmine
