// Copyright 2026 The JFSS Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef JFSS_TESTS_KNOWN_ANSWERS_HPP_
#define JFSS_TESTS_KNOWN_ANSWERS_HPP_

#include <array>
#include <cstdint>
#include <string_view>

namespace jfss::testing {

struct GcmVector {
  std::string_view key, iv, pt, aad, ct, tag;
};

// AES-256-GCM, 96-bit IV, 128-bit tag. The first two are test cases 13 and
// 14 of the original GCM submission; the rest are Count = 0 entries from
// NIST CAVP gcmEncryptExtIV256.rsp.
inline constexpr std::array<GcmVector, 10> kGcmVectors = {{
    {"0000000000000000000000000000000000000000000000000000000000000000",
     "000000000000000000000000", "", "", "",
     "530f8afbc74536b9a963b4f1c4cb738b"},
    {"0000000000000000000000000000000000000000000000000000000000000000",
     "000000000000000000000000", "00000000000000000000000000000000", "",
     "cea7403d4d606b6e074ec5d3baf39d18", "d0d1c8a799996bf0265b98b5d48ab919"},
    {"b52c505a37d78eda5dd34f20c22540ea1b58963cf8e5bf8ffa85f9f2492505b4",
     "516c33929df5a3284ff463d7", "", "", "",
     "bdc1ac884d332457a1d2664f168c76f0"},
    {"78dc4e0aaf52d935c3c01eea57428f00ca1fd475f5da86a49c8dd73d68c8e223",
     "d79cf22d504cc793c3fb6c8a", "", "b96baa8c1c75a671bfb2d08d06be5f36", "",
     "3e5d486aa2e30b22e040b85723a06e76"},
    {"31bdadd96698c204aa9ce1448ea94ae1fb4a9a0b3c9d773b51bb1822666b8f22",
     "0d18e06c7c725ac9e362e1ce", "2db5168e932556f8089a0622981d017d", "",
     "fa4362189661d163fcd6a56d8bf0405a", "d636ac1bbedd5cc3ee727dc2ab4a9489"},
    {"92e11dcdaa866f5ce790fd24501f92509aacf4cb8b1339d50c9c1240935dd08b",
     "ac93a1a6145299bde902f21a", "2d71bcfa914e4ac045b2aa60955fad24",
     "1e0889016f67601c8ebea4943bc23ad6", "8995ae2e6df3dbf96fac7b7137bae67f",
     "eca5aa77d51d4a0a14d9c51e1da474ab"},
    {"69b458f2644af9020463b40ee503cdf083d693815e2659051ae0d039e606a970",
     "8d1da8ab5f91ccd09205944b", "f3e0e09224256bf21a83a5de8d",
     "036ad5e5494ef817a8af2f5828784a4bfedd1653", "c0a62d77e6031bfdc6b13ae217",
     "a794a9aaee48cd92e47761bf1baff0af"},
    {"dc776f0156c15d032623854b625c61868e5db84b7b6f9fbd3672f12f0025e0f6",
     "67130951c4a57f6ae7f13241",
     "9378a727a5119595ad631b12a5a6bc8a91756ef09c8d6eaa2b718fe86876da20",
     "fd0920faeb7b212932280a009bac969145e5c316cf3922622c3705c3457c4e9f124b2076"
     "994323fbcfb523f8ed16d241",
     "6d958c20870d401a3c1f7a0ac092c97774d451c09f7aae992a8841ff0ab9d60d",
     "b876831b4ecd7242963b040aa45c4114"},
    {"24501ad384e473963d476edcfe08205237acfd49b5b8f33857f8114e863fec7f",
     "9ff18563b978ec281b3f2794",
     "27f348f9cdc0c5bd5e66b1ccb63ad920ff2219d14e8d631b3872265cf117ee86757accb1"
     "58bd9abb3868fdc0d0b074b5f01b2c",
     "adb5ec720ccf9898500028bf34afccbcaca126ef",
     "eb7cb754c824e8d96f7c6d9b76c7d26fb874ffbf1d65c6f64a698d839b0b06145dae8205"
     "7ad55994cf59ad7f67c0fa5e85fab8",
     "bc95c532fecc594c36d1550286a7a3f0"},
    {"148579a3cbca86d5520d66c0ec71ca5f7e41ba78e56dc6eebd566fed547fe691",
     "b08a5ea1927499c6ecbfd4e0",
     "9d0b15fdf1bd595f91f8b3abc0f7dec927dfd4799935a1795d9ce00c9b879434420fe42c"
     "275a7cd7b39d638fb81ca52b49dc41",
     "e4f963f015ffbb99ee3349bbaf7e8e8e6c2a71c230a48f9d59860a29091d2747e01a5ca5"
     "72347e247d25f56ba7ae8e05cde2be3c97931292c02370208ecd097ef692687fecf2f419"
     "d3200162a6480a57dad408a0dfeb492e2c5d",
     "2097e372950a5e9383c675e89eea1c314f999159f5611344b298cda45e62843716f215f8"
     "2ee663919c64002a5c198d7878fd3f",
     "adbecdb0d5c2224d804d2886ff9a5760"},
}};

struct Pbkdf2Vector {
  std::string_view password;
  std::string_view salt_hex;
  std::uint32_t iterations;
  std::string_view digest_hex;
};

// Computed with Python's hashlib.pbkdf2_hmac('sha256', ...).
inline constexpr std::array<Pbkdf2Vector, 2> kPbkdf2Vectors = {{
    {"correct horse battery staple", "000102030405060708090a0b0c0d0e0f", 100000,
     "49d49c25f597846209f0d92e7770ab64e1c75e94b4ce6c509265ee67175d2a1e"},
    {"passw\xc3\xb6rd", "4e61436c2d73616c742d313662797465", 120000,
     "14b7df63353ee4543312e4cd51a5df62eff1ad94143804fd7b9e5742f989c0cf"},
}};

}  // namespace jfss::testing

#endif  // JFSS_TESTS_KNOWN_ANSWERS_HPP_
