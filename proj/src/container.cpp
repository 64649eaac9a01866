/*
Copyright 2026 The gelc Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "gelc/container.hpp"

#include <algorithm>
#include <string>

namespace gelc {

namespace {

constexpr char kMagic[4] = {'G', 'E', 'L', 'C'};

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  for (int shift = 8 * (static_cast<int>(sizeof(T)) - 1); shift >= 0;
       shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : bytes_(b) {}

  template <class T>
  T get() {
    if (bytes_.size() - pos_ < sizeof(T)) {
      throw ContainerError("truncated container header");
    }
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v = static_cast<T>((v << 8) | bytes_[pos_++]);
    }
    return v;
  }

  std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

std::uint32_t fit32(const mpz_class& v, const char* what) {
  if (sgn(v) < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 32) {
    throw ContainerError(std::string(what) + " does not fit in 32 bits");
  }
  return static_cast<std::uint32_t>(mpz_get_ui(v.get_mpz_t()));
}

}  // namespace

const char* to_string(Codec c) {
  switch (c) {
    case Codec::sfe:
      return "sfe";
    case Codec::sfeg:
      return "sfeg";
    case Codec::dual:
      return "dual";
  }
  return "?";
}

Codec parse_codec(std::string_view name) {
  if (name == "sfe") return Codec::sfe;
  if (name == "sfeg") return Codec::sfeg;
  if (name == "dual") return Codec::dual;
  throw std::invalid_argument("unknown codec '" + std::string(name) +
                              "' (expected sfe, sfeg or dual)");
}

ContainerHeader ContainerHeader::for_model(Codec codec, const SourceModel& m) {
  ContainerHeader h;
  h.codec = codec;
  h.n = static_cast<std::uint16_t>(m.n());
  h.p0_num = fit32(m.p0().numerator(), "p0 numerator");
  h.p0_den = fit32(m.p0().denominator(), "p0 denominator");
  if (codec == Codec::dual) {
    h.alpha_num = fit32(m.alpha_hat().numerator(), "alpha_hat numerator");
    h.alpha_den = fit32(m.alpha_hat().denominator(), "alpha_hat denominator");
  }
  return h;
}

SourceModel ContainerHeader::model() const {
  if (p0_den == 0) throw ContainerError("p0 denominator is zero");
  const Rational p0(p0_num, p0_den);
  if (codec != Codec::dual) return SourceModel(p0, n);
  if (alpha_den == 0) throw ContainerError("alpha_hat denominator is zero");
  return SourceModel(p0, n, Rational(alpha_num, alpha_den));
}

std::vector<std::uint8_t> write_container(const ContainerHeader& h,
                                          std::span<const std::uint8_t> bits) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  put(out, kContainerVersion);
  put(out, static_cast<std::uint8_t>(h.codec));
  put(out, h.n);
  put(out, h.p0_num);
  put(out, h.p0_den);
  put(out, h.alpha_num);
  put(out, h.alpha_den);
  if (h.codec == Codec::dual) put(out, h.msg_len);
  put(out, h.block_count);
  const std::vector<std::uint8_t> packed = pack_bits(bits);
  out.insert(out.end(), packed.begin(), packed.end());
  return out;
}

Container read_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4 || !std::equal(std::begin(kMagic), std::end(kMagic),
                                      bytes.begin())) {
    throw ContainerError("not a GELC container (bad magic)");
  }
  Reader r(bytes.subspan(4));
  Container c;
  const auto version = r.get<std::uint8_t>();
  if (version != kContainerVersion) {
    throw ContainerError("unsupported container version " +
                         std::to_string(version));
  }
  const auto codec = r.get<std::uint8_t>();
  if (codec > 2) {
    throw ContainerError("unknown codec id " + std::to_string(codec));
  }
  ContainerHeader& h = c.header;
  h.codec = static_cast<Codec>(codec);
  h.n = r.get<std::uint16_t>();
  h.p0_num = r.get<std::uint32_t>();
  h.p0_den = r.get<std::uint32_t>();
  h.alpha_num = r.get<std::uint32_t>();
  h.alpha_den = r.get<std::uint32_t>();
  if (h.codec == Codec::dual) h.msg_len = r.get<std::uint64_t>();
  h.block_count = r.get<std::uint64_t>();
  const std::span<const std::uint8_t> payload = r.rest();
  if (h.codec == Codec::dual) {
    // Exactly block_count blocks of n bits, padded to a byte.
    const unsigned __int128 need_bits =
        static_cast<unsigned __int128>(h.block_count) * h.n;
    const unsigned __int128 need = (need_bits + 7) / 8;
    if (payload.size() < need) {
      throw ContainerError("truncated payload: " +
                           std::to_string(payload.size()) + " bytes, need " +
                           std::to_string(static_cast<std::uint64_t>(need)));
    }
    if (payload.size() > need) {
      throw ContainerError("trailing bytes after the payload");
    }
  }
  c.payload = unpack_bits(payload);
  return c;
}

}  // namespace gelc
