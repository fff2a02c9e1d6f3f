#include "wdbc/serialization.hpp"

#include <utility>

#include <nlohmann/json.hpp>

namespace wdbc {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSvmVersion = 1;
constexpr int kLogRegVersion = 1;
constexpr int kVblrVersion = 1;

ordered_json matrix_to_json(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

Matrix matrix_from_json(const ordered_json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j.at(i);
    if (row.size() != cols) throw ParseError(0, "ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = row.at(c).get<double>();
  }
  return m;
}

ordered_json parse_document(const std::string& text, const char* format,
                            int version) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("bad JSON: ") + e.what());
  }
  try {
    if (j.at("format").get<std::string>() != format) {
      throw ParseError(0, "unexpected format field, wanted '" + std::string(format) + "'");
    }
    if (j.at("version").get<int>() != version) {
      throw ParseError(0, "unsupported version for format '" + std::string(format) + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("missing format/version: ") + e.what());
  }
  return j;
}

}  // namespace

std::string svm_to_json(const SvmModel& model) {
  ordered_json j;
  j["format"] = "wdbc.svm";
  j["version"] = kSvmVersion;
  j["kernel"] = model.kernel.to_string();
  j["c"] = model.C;
  j["bias"] = model.bias;
  j["support_vectors"] = matrix_to_json(model.support_vectors);
  j["support_labels"] = model.support_labels;
  j["alphas"] = model.alphas;
  j["config"] = {{"tol", model.config.tol},
                 {"max_passes", model.config.max_passes},
                 {"max_iters", model.config.max_iters}};
  j["converged"] = model.converged;
  j["iterations"] = model.iterations;
  j["dual_objective"] = model.dual_objective;
  return j.dump(2);
}

SvmModel svm_from_json(const std::string& text) {
  const ordered_json j = parse_document(text, "wdbc.svm", kSvmVersion);
  try {
    SvmModel model;
    model.kernel = KernelSpec::parse(j.at("kernel").get<std::string>());
    model.C = j.at("c").get<double>();
    model.bias = j.at("bias").get<double>();
    model.support_vectors = matrix_from_json(j.at("support_vectors"));
    model.support_labels = j.at("support_labels").get<std::vector<int>>();
    model.alphas = j.at("alphas").get<Vector>();
    model.config.kernel = model.kernel;
    model.config.C = model.C;
    model.config.tol = j.at("config").at("tol").get<double>();
    model.config.max_passes = j.at("config").at("max_passes").get<std::size_t>();
    model.config.max_iters = j.at("config").at("max_iters").get<std::uint64_t>();
    model.converged = j.at("converged").get<bool>();
    model.iterations = j.at("iterations").get<std::uint64_t>();
    model.dual_objective = j.at("dual_objective").get<double>();
    if (model.support_labels.size() != model.support_vectors.rows() ||
        model.alphas.size() != model.support_vectors.rows()) {
      throw ParseError(0, "svm model: misaligned support arrays");
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("svm model: ") + e.what());
  }
}

std::string logreg_to_json(const LogRegModel& model) {
  ordered_json j;
  j["format"] = "wdbc.logreg";
  j["version"] = kLogRegVersion;
  j["weights"] = model.weights;
  j["ridge"] = model.ridge;
  j["iterations"] = model.iterations;
  j["converged"] = model.converged;
  return j.dump(2);
}

LogRegModel logreg_from_json(const std::string& text) {
  const ordered_json j = parse_document(text, "wdbc.logreg", kLogRegVersion);
  try {
    LogRegModel model;
    model.weights = j.at("weights").get<Vector>();
    model.ridge = j.at("ridge").get<double>();
    model.iterations = j.at("iterations").get<std::size_t>();
    model.converged = j.at("converged").get<bool>();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("logreg model: ") + e.what());
  }
}

std::string vblr_to_json(const VblrPosterior& post) {
  ordered_json j;
  j["format"] = "wdbc.vblr";
  j["version"] = kVblrVersion;
  j["mode"] = post.mode == PriorMode::Fixed ? "fixed" : "hierarchical";
  j["mu_n"] = post.mu_n;
  j["s_n"] = matrix_to_json(post.s_n);
  if (post.mode == PriorMode::Hierarchical) {
    j["a_n"] = post.a_n;
    j["b_n"] = post.b_n;
  }
  j["xi"] = post.xi;
  j["trace"] = post.trace;
  j["converged"] = post.converged;
  j["iterations"] = post.iterations;
  j["jitter_events"] = post.jitter_events;
  return j.dump(2);
}

VblrPosterior vblr_from_json(const std::string& text) {
  const ordered_json j = parse_document(text, "wdbc.vblr", kVblrVersion);
  try {
    VblrPosterior post;
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "fixed") {
      post.mode = PriorMode::Fixed;
    } else if (mode == "hierarchical") {
      post.mode = PriorMode::Hierarchical;
    } else {
      throw ParseError(0, "vblr posterior: unknown mode '" + mode + "'");
    }
    post.mu_n = j.at("mu_n").get<Vector>();
    post.s_n = matrix_from_json(j.at("s_n"));
    if (post.mode == PriorMode::Hierarchical) {
      post.a_n = j.at("a_n").get<double>();
      post.b_n = j.at("b_n").get<double>();
    }
    post.xi = j.at("xi").get<Vector>();
    post.trace = j.at("trace").get<std::vector<double>>();
    post.converged = j.at("converged").get<bool>();
    post.iterations = j.at("iterations").get<std::size_t>();
    post.jitter_events = j.at("jitter_events").get<std::size_t>();
    if (post.s_n.rows() != post.mu_n.size() || post.s_n.cols() != post.mu_n.size()) {
      throw ParseError(0, "vblr posterior: S_N shape mismatch");
    }
    return post;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("vblr posterior: ") + e.what());
  }
}

}  // namespace wdbc
