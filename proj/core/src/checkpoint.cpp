#include "wiretap/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wiretap/errors.hpp"

namespace wiretap {

using nlohmann::json;

namespace {

json layer_to_json(const DenseLayer& layer) {
    json rows = json::array();
    for (std::size_t r = 0; r < layer.weights.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < layer.weights.cols(); ++c) row.push_back(layer.weights(r, c));
        rows.push_back(std::move(row));
    }
    return json{{"in_dim", layer.in_dim()},
                {"out_dim", layer.out_dim()},
                {"activation", layer.activation == Activation::relu ? "relu" : "linear"},
                {"weights", std::move(rows)},
                {"bias", layer.bias}};
}

DenseLayer layer_from_json(const json& j) {
    DenseLayer layer;
    const auto in_dim = j.at("in_dim").get<std::size_t>();
    const auto out_dim = j.at("out_dim").get<std::size_t>();
    const std::string act = j.at("activation").get<std::string>();
    if (act == "relu")
        layer.activation = Activation::relu;
    else if (act == "linear")
        layer.activation = Activation::linear;
    else
        throw ParamError("checkpoint: unknown activation \"" + act + "\"");

    const json& rows = j.at("weights");
    if (rows.size() != out_dim) throw ParamError("checkpoint: weight row count mismatch");
    layer.weights = Matrix(out_dim, in_dim);
    for (std::size_t r = 0; r < out_dim; ++r) {
        const json& row = rows.at(r);
        if (row.size() != in_dim) throw ParamError("checkpoint: weight column count mismatch");
        for (std::size_t c = 0; c < in_dim; ++c) layer.weights(r, c) = row.at(c).get<double>();
    }
    layer.bias = j.at("bias").get<std::vector<double>>();
    if (layer.bias.size() != out_dim) throw ParamError("checkpoint: bias length mismatch");
    return layer;
}

json stack_to_json(const LayerStack& stack) {
    json layers = json::array();
    for (const auto& layer : stack.layers) layers.push_back(layer_to_json(layer));
    return layers;
}

LayerStack stack_from_json(const json& j) {
    LayerStack stack;
    for (const auto& layer : j) stack.layers.push_back(layer_from_json(layer));
    return stack;
}

json model_to_json(const WiretapModel& model) {
    return json{{"message_count", model.message_count},
                {"codeword_dim", model.codeword_dim},
                {"normalization", normalization_name(model.normalization)},
                {"encoder", stack_to_json(model.encoder)},
                {"bob", stack_to_json(model.bob)},
                {"eve", stack_to_json(model.eve)}};
}

WiretapModel model_from_json(const json& j) {
    WiretapModel model;
    model.message_count = j.at("message_count").get<std::size_t>();
    model.codeword_dim = j.at("codeword_dim").get<std::size_t>();
    model.normalization = normalization_from_name(j.at("normalization").get<std::string>());
    model.encoder = stack_from_json(j.at("encoder"));
    model.bob = stack_from_json(j.at("bob"));
    model.eve = stack_from_json(j.at("eve"));
    return model;
}

json clusters_to_json(const ClusterAssignment& a) {
    json centers = json::array();
    for (std::size_t r = 0; r < a.centers.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < a.centers.cols(); ++c) row.push_back(a.centers(r, c));
        centers.push_back(std::move(row));
    }
    return json{{"labels", a.labels},
                {"centers", std::move(centers)},
                {"cluster_count", a.cluster_count},
                {"cluster_size", a.cluster_size}};
}

ClusterAssignment clusters_from_json(const json& j) {
    ClusterAssignment a;
    a.labels = j.at("labels").get<std::vector<int>>();
    a.cluster_count = j.at("cluster_count").get<int>();
    a.cluster_size = j.at("cluster_size").get<int>();
    const json& centers = j.at("centers");
    if (centers.empty()) throw ParamError("checkpoint: empty cluster centers");
    a.centers = Matrix(centers.size(), centers.at(0).size());
    for (std::size_t r = 0; r < centers.size(); ++r)
        for (std::size_t c = 0; c < a.centers.cols(); ++c)
            a.centers(r, c) = centers.at(r).at(c).get<double>();
    return a;
}

}  // namespace

void save_checkpoint(const Checkpoint& checkpoint, const std::string& path) {
    json j;
    j["format_version"] = checkpoint.format_version;
    j["config"] = json::parse(serialize_run_config(checkpoint.config));
    j["config_hash"] = checkpoint.hash();
    j["seed"] = checkpoint.seed;
    j["pre_security_model"] = model_to_json(checkpoint.pre_security);
    j["final_model"] = model_to_json(checkpoint.final_model);
    j["clusters"] = clusters_to_json(checkpoint.clusters);

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open checkpoint for writing: " + path);
    out << j.dump(1);
    out << "\n";
    if (!out) throw IoError("checkpoint write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open checkpoint: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();

    json j;
    try {
        j = json::parse(buf.str());
    } catch (const json::exception& e) {
        throw ParamError(std::string("checkpoint: invalid JSON: ") + e.what());
    }

    try {
        Checkpoint ck;
        ck.format_version = j.at("format_version").get<int>();
        if (ck.format_version != kCheckpointFormatVersion)
            throw ParamError("checkpoint: format version " + std::to_string(ck.format_version) +
                             " not supported (expected " + std::to_string(kCheckpointFormatVersion) + ")");
        ck.config = parse_run_config_text(j.at("config").dump());
        ck.seed = j.at("seed").get<std::uint64_t>();
        ck.pre_security = model_from_json(j.at("pre_security_model"));
        ck.final_model = model_from_json(j.at("final_model"));
        ck.clusters = clusters_from_json(j.at("clusters"));
        return ck;
    } catch (const json::exception& e) {
        throw ParamError(std::string("checkpoint: malformed content: ") + e.what());
    }
}

}  // namespace wiretap
