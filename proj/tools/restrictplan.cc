// Copyright 2026 The Restrictplan Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: corpus ingestion, one-off extraction, the HTTP
// server and store verification.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "restrictplan/api.h"
#include "restrictplan/extraction.h"
#include "restrictplan/ingest.h"
#include "restrictplan/serialization.h"
#include "restrictplan/store.h"

namespace fs = std::filesystem;
using namespace restrictplan;

namespace {

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RuleTable Rules(const std::string &path) {
  return path.empty() ? RuleTable::LoadDefault() : RuleTable::Load(path);
}

int Ingest(const std::string &corpus, const std::string &store_path,
           const std::string &rules_path) {
  RuleTable rules = Rules(rules_path);
  auto store = Store::Open(store_path);
  size_t refs = 0, warnings = 0, added = 0;
  for (const auto &doc : IngestCorpus(corpus, *store, rules)) {
    if (!doc.added) {
      std::cout << doc.id << ": already present, skipped\n";
      continue;
    }
    for (const auto &w : doc.warnings) {
      std::cerr << doc.id << ": warning: " << w.message << "\n";
    }
    std::cout << doc.id << ": " << doc.refs.size() << " restrictions, "
              << doc.warnings.size() << " warnings\n";
    refs += doc.refs.size();
    warnings += doc.warnings.size();
    ++added;
  }
  std::cout << "ingested " << added << " documents, " << refs
            << " restrictions, " << warnings << " warnings\n";
  return 0;
}

int Extract(const std::string &text_path, const std::string &rules_path) {
  RuleTable rules = Rules(rules_path);
  std::string id = fs::path(text_path).stem().string();
  Extraction extraction = ExtractDocument(id, ReadFile(text_path), rules);
  Json out = Json::array();
  for (const auto &ref : extraction.refs) out.push_back(ToJson(ref));
  std::cout << out.dump(2) << "\n";
  for (const auto &warning : extraction.warnings) {
    std::cerr << "warning: " << warning.message << "\n";
  }
  return 0;
}

HttpServer *running_server = nullptr;

void StopServer(int) {
  if (running_server) running_server->Stop();
}

int Serve(const std::string &store_path, int port, const std::string &rules_path,
          const std::string &ui_dir) {
  auto store = Store::Open(store_path);
  ApiService api(*store, Rules(rules_path));
  std::optional<fs::path> static_dir;
  if (!ui_dir.empty()) static_dir = ui_dir;
  HttpServer server(api, static_dir);
  if (!server.Bind("0.0.0.0", port)) {
    std::cerr << "cannot bind port " << port << "\n";
    return 1;
  }
  running_server = &server;
  std::signal(SIGINT, StopServer);
  std::signal(SIGTERM, StopServer);
  std::cout << "listening on :" << port << "\n" << std::flush;
  server.ListenAfterBind();
  running_server = nullptr;
  return 0;
}

int Verify(const std::string &store_path) {
  auto store = Store::Open(store_path);
  auto problems = store->Verify();
  StoreCounts counts = store->Counts();
  for (const auto &p : problems) std::cout << "problem: " << p << "\n";
  std::cout << counts.nodes << " nodes, " << counts.edges << " edges, "
            << counts.polygons << " polygons: "
            << (problems.empty() ? "ok" : "INVALID") << "\n";
  return problems.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Spatio-temporal restriction planning"};
  app.require_subcommand(1);

  std::string corpus, store_path, rules_path, text_path, ui_dir;
  int port = 8080;

  auto *ingest = app.add_subcommand("ingest", "Ingest a directory of .txt documents");
  ingest->add_option("--corpus", corpus, "Corpus directory")->required()->check(CLI::ExistingDirectory);
  ingest->add_option("--store", store_path, "Journal path")->required();
  ingest->add_option("--rules", rules_path, "Rule table JSON");

  auto *extract = app.add_subcommand("extract", "Print the restrictions found in a text file");
  extract->add_option("--text", text_path, "Text file")->required()->check(CLI::ExistingFile);
  extract->add_option("--rules", rules_path, "Rule table JSON");

  auto *serve = app.add_subcommand("serve", "Serve the JSON API");
  serve->add_option("--store", store_path, "Journal path")->required();
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--rules", rules_path, "Rule table JSON");
  serve->add_option("--ui", ui_dir, "Static files served under /")->check(CLI::ExistingDirectory);

  auto *verify = app.add_subcommand("verify", "Check store invariants");
  verify->add_option("--store", store_path, "Journal path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*ingest) return Ingest(corpus, store_path, rules_path);
    if (*extract) return Extract(text_path, rules_path);
    if (*serve) return Serve(store_path, port, rules_path, ui_dir);
    if (*verify) return Verify(store_path);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
