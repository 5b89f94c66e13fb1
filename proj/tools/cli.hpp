#pragma once

namespace verigen::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitEnvironment = 2;
inline constexpr int kExitUsage = 64;

int run(int argc, char** argv);

}  // namespace verigen::cli
