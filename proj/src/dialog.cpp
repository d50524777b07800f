#include "pdlg/dialog.hpp"

#include <charconv>
#include <fstream>

#include "pdlg/error.hpp"

namespace pdlg {

namespace {

std::string line_err(std::size_t line_no, const std::string& what) {
  return "line " + std::to_string(line_no) + ": " + what;
}

}  // namespace

std::string serialize_dialog(const Dialog& d) {
  if (d.lines.empty()) throw CorpusError("serialize: empty dialog");
  std::string out;
  int n = 1;
  for (const auto& l : d.lines) {
    out += std::to_string(n++);
    out += ' ';
    if (l.kind == LineKind::exchange) {
      out += l.user;
      out += '\t';
      out += l.bot;
    } else {
      out += l.text;
    }
    out += '\n';
  }
  return out;
}

Dialog parse_dialog(const std::vector<std::string>& lines, std::size_t base_line) {
  if (lines.empty()) throw CorpusError(line_err(base_line, "empty dialog block"));
  Dialog d;
  int expect = 1;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::size_t no = base_line + i;
    const std::string& raw = lines[i];
    auto sp = raw.find(' ');
    if (sp == std::string::npos || sp == 0)
      throw CorpusError(line_err(no, "missing line number"));
    int n = 0;
    auto [p, ec] = std::from_chars(raw.data(), raw.data() + sp, n);
    if (ec != std::errc() || p != raw.data() + sp)
      throw CorpusError(line_err(no, "bad line number '" + raw.substr(0, sp) + "'"));
    if (n != expect)
      throw CorpusError(line_err(no, "non-monotone line numbering (got " +
                                         std::to_string(n) + ", want " +
                                         std::to_string(expect) + ")"));
    ++expect;
    std::string body = raw.substr(sp + 1);
    if (body.empty()) throw CorpusError(line_err(no, "empty line body"));
    auto tab = body.find('\t');
    DialogLine l;
    if (tab == std::string::npos) {
      l.kind = (i == 0) ? LineKind::profile : LineKind::fact;
      l.text = body;
    } else {
      if (body.find('\t', tab + 1) != std::string::npos)
        throw CorpusError(line_err(no, "more than one tab in line"));
      if (i == 0)
        throw CorpusError(line_err(no, "first line must be a profile line"));
      l.kind = LineKind::exchange;
      l.user = body.substr(0, tab);
      l.bot = body.substr(tab + 1);
      if (l.user.empty() || l.bot.empty())
        throw CorpusError(line_err(no, "empty side of exchange"));
    }
    d.lines.push_back(std::move(l));
  }
  return d;
}

std::size_t for_each_dialog(const std::string& path,
                            const std::function<void(Dialog&&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CorpusError("cannot open " + path);
  std::vector<std::string> block;
  std::size_t count = 0;
  std::size_t line_no = 0;
  std::size_t block_start = 1;
  std::string line;
  auto flush = [&]() {
    if (block.empty()) return;
    fn(parse_dialog(block, block_start));
    ++count;
    block.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r')
      throw CorpusError(line_err(line_no, "CR line ending in " + path));
    if (line.empty()) {
      flush();
      block_start = line_no + 1;
    } else {
      if (block.empty()) block_start = line_no;
      block.push_back(line);
    }
  }
  flush();
  return count;
}

std::vector<Dialog> load_corpus(const std::string& path) {
  std::vector<Dialog> out;
  for_each_dialog(path, [&out](Dialog&& d) { out.push_back(std::move(d)); });
  return out;
}

void write_corpus(const std::string& path, const std::vector<Dialog>& dialogs) {
  CorpusWriter w(path);
  for (const auto& d : dialogs) w.add(d);
}

struct CorpusWriter::Impl {
  std::ofstream out;
  bool first = true;
};

CorpusWriter::CorpusWriter(const std::string& path) : impl_(new Impl) {
  impl_->out.open(path, std::ios::binary);
  if (!impl_->out) {
    delete impl_;
    throw CorpusError("cannot open " + path + " for writing");
  }
}

CorpusWriter::~CorpusWriter() { delete impl_; }

void CorpusWriter::add(const Dialog& d) {
  if (!impl_->first) impl_->out << "\n";
  impl_->first = false;
  impl_->out << serialize_dialog(d);
  ++count_;
}

}  // namespace pdlg
