#include "dam/service/checkpoint.hpp"

#include <zlib.h>

#include <bit>
#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <iterator>

#include "dam/errors.hpp"
#include "dam/text/dataset_io.hpp"

namespace dam::service {

using nlohmann::json;

namespace {

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::string_view take(std::size_t n) {
    if (n > bytes_.size() - pos_) throw IntegrityError("checkpoint is truncated");
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint64_t le(int bytes) {
    auto s = take(static_cast<std::size_t>(bytes));
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t(static_cast<unsigned char>(s[i])) << (8 * i);
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t crc32_of(std::string_view bytes) {
  uLong crc = ::crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths; feed large buffers in pieces.
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    const auto n = static_cast<uInt>(std::min<std::size_t>(bytes.size() - pos, 1u << 30));
    crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos), n);
    pos += n;
  }
  return static_cast<std::uint32_t>(crc);
}

json metadata_to_json(const model::ModelConfig& config, const CheckpointMetadata& m) {
  return json{{"model", model_config_to_json(config)},
              {"vocabulary", text::vocabulary_to_json(m.vocabulary)},
              {"layout", text::layout_to_json(m.layout)},
              {"note_format", {{"section_markers", m.note_format.section_markers}}},
              {"max_length", m.max_length},
              {"train_config", m.train_config.is_null() ? json::object() : m.train_config},
              {"train_fingerprint", m.train_fingerprint},
              {"created_at", m.created_at}};
}

}  // namespace

json model_config_to_json(const model::ModelConfig& c) {
  return json{{"kind", model::to_string(c.kind)},
              {"task", model::to_string(c.task)},
              {"pooling", model::to_string(c.pooling)},
              {"wide", c.wide},
              {"multiclass_loss", model::to_string(c.multiclass_loss)},
              {"vocab_size", c.vocab_size},
              {"structured_dim", c.structured_dim},
              {"embedding_dim", c.embedding_dim},
              {"model_dim", c.model_dim},
              {"attention_dim", c.attention_dim},
              {"head_hidden", c.head_hidden},
              {"mlp_hidden", c.mlp_hidden}};
}

model::ModelConfig model_config_from_json(const json& j) {
  try {
    model::ModelConfig c;
    c.kind = model::parse_model_kind(j.at("kind").get<std::string>());
    c.task = model::parse_task(j.at("task").get<std::string>());
    c.pooling = model::parse_pooling(j.at("pooling").get<std::string>());
    c.wide = j.at("wide").get<bool>();
    c.multiclass_loss = model::parse_multiclass_loss(j.at("multiclass_loss").get<std::string>());
    c.vocab_size = j.at("vocab_size").get<std::size_t>();
    c.structured_dim = j.at("structured_dim").get<std::size_t>();
    c.embedding_dim = j.at("embedding_dim").get<std::size_t>();
    c.model_dim = j.at("model_dim").get<std::size_t>();
    c.attention_dim = j.at("attention_dim").get<std::size_t>();
    c.head_hidden = j.at("head_hidden").get<std::size_t>();
    c.mlp_hidden = j.at("mlp_hidden").get<std::size_t>();
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed model config: ") + e.what());
  }
}

std::string crc32_hex(std::string_view bytes) {
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", crc32_of(bytes));
  return buf;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string serialize_checkpoint(Checkpoint& ckpt) {
  const auto& params = ckpt.model.params;
  std::string out(kCheckpointMagic, sizeof kCheckpointMagic);
  put_le(out, kCheckpointVersion, 4);
  const std::string meta = metadata_to_json(ckpt.model.config, ckpt.metadata).dump();
  put_le(out, meta.size(), 8);
  out += meta;
  put_le(out, params.size(), 4);
  for (std::size_t i = 0; i < params.size(); ++i) {
    const numerics::ParamId id{i};
    const auto& name = params.name(id);
    const auto& t = params[id];
    put_le(out, name.size(), 4);
    out += name;
    put_le(out, t.rows(), 8);
    put_le(out, t.cols(), 8);
    for (double v : t.data()) put_le(out, std::bit_cast<std::uint64_t>(v), 8);
  }
  const std::uint32_t crc = crc32_of(out);
  ckpt.checksum = crc32_hex(out);
  put_le(out, crc, 4);
  return out;
}

Checkpoint deserialize_checkpoint(std::string_view bytes) {
  Reader r(bytes);
  if (bytes.size() < sizeof kCheckpointMagic) throw IntegrityError("checkpoint is truncated");
  if (std::memcmp(r.take(sizeof kCheckpointMagic).data(), kCheckpointMagic,
                  sizeof kCheckpointMagic) != 0) {
    throw IntegrityError("not a checkpoint file (bad magic)");
  }
  const auto version = r.le(4);
  if (version != kCheckpointVersion) {
    throw VersionError("checkpoint format version " + std::to_string(version) +
                       ", this build reads version " + std::to_string(kCheckpointVersion));
  }
  if (bytes.size() < sizeof kCheckpointMagic + 4 + 4) throw IntegrityError("checkpoint is truncated");
  const auto body = bytes.substr(0, bytes.size() - 4);
  Reader tail(bytes.substr(bytes.size() - 4));
  if (tail.le(4) != crc32_of(body)) {
    throw IntegrityError("checkpoint checksum mismatch (truncated or corrupted)");
  }

  Checkpoint ckpt;
  ckpt.checksum = crc32_hex(body);
  Reader b(body.substr(sizeof kCheckpointMagic + 4));
  const auto meta_len = b.le(8);
  json meta;
  try {
    meta = json::parse(b.take(meta_len));
    ckpt.model.config = model_config_from_json(meta.at("model"));
    auto& m = ckpt.metadata;
    m.vocabulary = text::vocabulary_from_json(meta.at("vocabulary"));
    m.layout = text::layout_from_json(meta.at("layout"));
    m.note_format.section_markers = meta.at("note_format").at("section_markers").get<bool>();
    m.max_length = meta.at("max_length").get<std::size_t>();
    m.train_config = meta.at("train_config");
    m.train_fingerprint = meta.at("train_fingerprint").get<std::string>();
    m.created_at = meta.at("created_at").get<std::string>();
  } catch (const json::exception& e) {
    throw IntegrityError(std::string("checkpoint metadata is malformed: ") + e.what());
  }

  const auto count = b.le(4);
  for (std::uint64_t i = 0; i < count; ++i) {
    const auto name_len = b.le(4);
    std::string name(b.take(name_len));
    const auto rows = b.le(8);
    const auto cols = b.le(8);
    if (cols != 0 && rows > b.remaining() / 8 / cols) throw IntegrityError("checkpoint is truncated");
    numerics::Tensor2 t(rows, cols);
    for (double& v : t.data()) v = std::bit_cast<double>(b.le(8));
    ckpt.model.params.add(std::move(name), std::move(t));
  }
  if (b.remaining() != 0) throw IntegrityError("trailing bytes after tensor payload");
  return ckpt;
}

void save_checkpoint(Checkpoint& ckpt, const std::filesystem::path& path) {
  const std::string bytes = serialize_checkpoint(ckpt);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write checkpoint '" + path.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("short write to checkpoint '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize_checkpoint(bytes);
}

void require_task(const Checkpoint& ckpt, model::Task task) {
  if (ckpt.model.config.task != task) {
    throw TaskMismatchError("checkpoint was trained for task=" +
                            model::to_string(ckpt.model.config.task) + ", requested task=" +
                            model::to_string(task));
  }
}

}  // namespace dam::service
