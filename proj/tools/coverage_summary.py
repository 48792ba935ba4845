"""Line coverage of the headers in one directory, merged over every gcov
data file below a build tree. Prints a per-file table and writes the total
percentage to the output file. With --reset, deletes the data files."""

import gzip
import json
import os
import subprocess
import sys
import tempfile


def gcda_files(build):
    return [os.path.join(d, f) for d, _, fs in os.walk(build) for f in fs if f.endswith(".gcda")]


def main():
    if sys.argv[1] == "--reset":
        for gcda in gcda_files(sys.argv[2]):
            os.remove(gcda)
        return
    build, headers, output = os.path.realpath(sys.argv[1]), sys.argv[2], sys.argv[3]
    headers = os.path.realpath(headers)
    lines = {}
    gcdas = gcda_files(build)
    if not gcdas:
        sys.exit("no .gcda files found; run the instrumented tests first")
    with tempfile.TemporaryDirectory() as tmp:
        for gcda in gcdas:
            subprocess.run(["gcov", "--json-format", "--object-directory", os.path.dirname(gcda), gcda],
                           cwd=tmp, check=True, capture_output=True)
        for name in os.listdir(tmp):
            with gzip.open(os.path.join(tmp, name)) as f:
                data = json.load(f)
            for entry in data["files"]:
                path = os.path.realpath(os.path.join(data.get("current_working_directory", ""), entry["file"]))
                if os.path.dirname(path) != headers:
                    continue
                hits = lines.setdefault(path, {})
                for line in entry["lines"]:
                    n = line["line_number"]
                    hits[n] = hits.get(n, 0) + line["count"]
    total = covered = 0
    for path in sorted(lines):
        hits = lines[path]
        if not hits:
            continue
        done = sum(1 for c in hits.values() if c > 0)
        total += len(hits)
        covered += done
        print(f"{os.path.basename(path):24s} {done:5d}/{len(hits):5d}  {100.0 * done / max(1, len(hits)):6.2f}%")
    percent = 100.0 * covered / max(1, total)
    print(f"{'total':24s} {covered:5d}/{total:5d}  {percent:6.2f}%")
    with open(output, "w") as f:
        f.write(f"{percent:.4f}\n")


if __name__ == "__main__":
    main()
