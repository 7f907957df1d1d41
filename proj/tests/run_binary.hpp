#pragma once

#include <array>
#include <cstdio>
#include <sys/wait.h>
#include <string>

struct Captured {
  int status = -1;
  std::string output;
};

// Runs a shell command and captures its standard output.
inline Captured run_command(const std::string& command) {
  Captured out;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 4096> buffer{};
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.output.append(buffer.data(), n);
  const int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}
