// Linked into test binaries that must not touch the network. The executable's
// definitions interpose the libc symbols, so any socket creation aborts the
// test run.

#include <sys/socket.h>

#include <cstdio>
#include <cstdlib>

extern "C" int socket(int domain, int /*type*/, int /*protocol*/) {
  std::fprintf(stderr, "net_guard: socket(domain=%d) attempted in fixture mode\n", domain);
  std::abort();
}

extern "C" int connect(int /*fd*/, const struct sockaddr* /*addr*/, socklen_t /*len*/) {
  std::fprintf(stderr, "net_guard: connect() attempted in fixture mode\n");
  std::abort();
}
