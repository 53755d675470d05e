#include <atomic>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "doctest.h"
#include "helpers.h"
#include "httplib.h"
#include "ldql/executor.h"

using namespace ldql;
using namespace ldql::test;

namespace {

// Serves the running-example web over loopback HTTP. Document URIs take the
// form http://127.0.0.1:<port>/<name>.
class TestServer {
 public:
  TestServer() {
    server_.Get(R"(/doc/(.+))", [this](const httplib::Request& req, httplib::Response& res) {
      auto it = bodies_.find(req.matches[1]);
      if (it == bodies_.end()) {
        res.status = 404;
        return;
      }
      res.set_content(it->second, "application/n-triples");
    });
    server_.Get(R"(/redirect/(.+))", [](const httplib::Request& req, httplib::Response& res) {
      res.status = 302;
      res.set_header("Location", "/doc/" + std::string(req.matches[1]));
    });
    server_.Get("/loop", [](const httplib::Request&, httplib::Response& res) {
      res.status = 302;
      res.set_header("Location", "/loop");
    });
    server_.Get("/broken", [](const httplib::Request&, httplib::Response& res) {
      res.set_content("this is not n-triples", "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    if (port_ > 0) {
      thread_ = std::thread([this] { server_.listen_after_bind(); });
      server_.wait_until_ready();
    }
  }

  ~TestServer() {
    if (port_ > 0) {
      server_.stop();
      thread_.join();
    }
  }

  bool ok() const { return port_ > 0; }
  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_); }
  void add_doc(const std::string& name, const std::string& ntriples) {
    bodies_[name] = ntriples;
  }

 private:
  httplib::Server server_;
  std::map<std::string, std::string> bodies_;
  int port_ = -1;
  std::thread thread_;
};

}  // namespace

TEST_CASE("HTTP dereferencing serves live executions") {
  // The loopback server must be reached directly.
  unsetenv("http_proxy");
  unsetenv("HTTP_PROXY");
  TestServer server;
  if (!server.ok()) {
    MESSAGE("cannot bind a loopback port in this environment; skipping");
    return;
  }
  std::string base = server.base();
  auto u = [&](const std::string& name) { return base + "/doc/" + name; };
  // Mirror of the running-example web, with absolute URIs.
  server.add_doc("dA", "<" + u("dA") + "> <" + u("p1") + "> <" + u("dB") + "> .\n" +
                           "<" + u("dB") + "> <" + u("p2") + "> <" + u("dC") + "> .\n");
  server.add_doc("dB", "<" + u("dB") + "> <" + u("p1") + "> <" + u("dC") + "> .\n");
  server.add_doc("dC", "<" + u("dA") + "> <" + u("p2") + "> <" + u("dC") + "> .\n");

  HttpLookup::Options options;
  options.timeout_seconds = 5;
  HttpLookup lk(options);

  SUBCASE("lookups retrieve and parse documents") {
    const Document* d = lk.lookup(u("dA"));
    REQUIRE(d != nullptr);
    CHECK(d->id == u("dA"));
    CHECK(d->data.size() == 2);
    CHECK(lk.lookup(u("missing")) == nullptr);
    CHECK(lk.lookup("not-a-uri") == nullptr);
    CHECK(lk.lookup(base + "/broken") == nullptr);
  }

  SUBCASE("redirects are followed to a bounded depth") {
    const Document* d = lk.lookup(base + "/redirect/dA");
    REQUIRE(d != nullptr);
    // The document stays authoritative for the pre-redirect URI.
    CHECK(d->id == base + "/redirect/dA");
    CHECK(d->data.size() == 2);
    CHECK(lk.lookup(base + "/loop") == nullptr);
  }

  SUBCASE("queries execute over the live web") {
    std::string text = "<< {_ <" + u("p1") + "> _}* / [{_ <" + u("p2") + "> _}] , "
                       "{ ?x <" + u("p1") + "> ?y . ?x <" + u("p2") + "> ?z } >>";
    QueryPtr q = parse_query(text);
    ExecutionTrace trace;
    SolutionSet got = exec_query(*q, {u("dA")}, lk, &trace);
    CHECK(got == SolutionSet{mapping({{"x", uri(u("dA"))},
                                      {"y", uri(u("dB"))},
                                      {"z", uri(u("dC"))}})});
    CHECK(trace.successes >= 3);
  }

  SUBCASE("politeness delays space out lookups") {
    HttpLookup::Options slow;
    slow.per_host_delay_millis = 30;
    HttpLookup polite(slow);
    auto start = std::chrono::steady_clock::now();
    polite.lookup(u("dA"));
    polite.lookup(u("dB"));
    double ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    CHECK(ms >= 30.0);
  }
}
