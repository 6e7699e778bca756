#include "docre/model/checkpoint.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "docre/errors.hpp"

namespace docre::model {

void save_checkpoint(const TrainedModel& model, const std::filesystem::path& path) {
  nlohmann::json j;
  j["format_version"] = kCheckpointVersion;
  j["variant"] = std::string(to_string(model.variant));
  j["schema"] = model.schema.to_string();
  j["num_classes"] = model.schema.num_classes;
  j["config"] = model.config;
  j["vocabulary"] = model.vocab.tokens();
  auto& tensors = j["tensors"] = nlohmann::json::object();
  model.params.visit([&](const std::string& name, const auto& t) {
    tensors[name] = {{"rows", t.rows()},
                     {"cols", t.cols()},
                     {"data", std::vector<double>(t.data(), t.data() + t.size())}};
  });
  std::ofstream out(path);
  if (!out) throw DataError("cannot write checkpoint " + path.string());
  out << j.dump() << '\n';
}

TrainedModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open checkpoint " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
  try {
    if (j.at("format_version") != kCheckpointVersion)
      throw DataError("checkpoint " + path.string() + ": unsupported format_version");
    TrainedModel m;
    m.variant = parse_variant(j.at("variant").get<std::string>());
    m.schema = RelationSchema::parse(j.at("schema").get<std::string>(), j.at("num_classes"));
    m.config = j.at("config").get<ModelConfig>();
    m.vocab = Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    m.params = ModelParams<double>::init(m.config, m.vocab.size(), m.schema.arity(), 0);
    const auto& tensors = j.at("tensors");
    m.params.visit([&](const std::string& name, auto& t) {
      const auto& entry = tensors.at(name);
      const auto data = entry.at("data").get<std::vector<double>>();
      if (entry.at("rows") != t.rows() || entry.at("cols") != t.cols() ||
          data.size() != static_cast<std::size_t>(t.size()))
        throw DataError("checkpoint tensor '" + name + "' has the wrong shape");
      std::copy(data.begin(), data.end(), t.data());
    });
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("checkpoint " + path.string() + ": " + e.what());
  }
}

int load_word_vectors(const std::filesystem::path& path, const Vocabulary& vocab,
                      Matrix<double>& word_vectors) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open word vectors " + path.string());
  std::string line;
  int replaced = 0;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) continue;
    std::vector<double> values;
    double v;
    while (fields >> v) values.push_back(v);
    if (!fields.eof())
      throw DataError(path.string() + ":" + std::to_string(line_number) + ": non-numeric value");
    if (static_cast<Eigen::Index>(values.size()) != word_vectors.rows())
      throw DataError(path.string() + ":" + std::to_string(line_number) + ": expected " +
                      std::to_string(word_vectors.rows()) + " values");
    const int id = vocab.id(token);
    if (id == Vocabulary::kUnknown && token != Vocabulary::kUnknownToken) continue;
    word_vectors.col(id) = Eigen::Map<const Vector<double>>(values.data(), values.size());
    ++replaced;
  }
  return replaced;
}

}  // namespace docre::model
