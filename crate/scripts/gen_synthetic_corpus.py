#!/usr/bin/env python3
"""Regenerates data/synthetic/ from data/english_sample.txt.

Each document mixes prose sentences from the English sample with planted
acronym definitions, later reuses of those acronyms, stray upper-case words
that are not acronyms, and a few definitions that no code can express.
Output is deterministic for a given seed.

    python3 scripts/gen_synthetic_corpus.py [--seed 2024] [--docs 24]
"""

import argparse
import random
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
WINDOW = 16
MAX_LETTERS = 6

# (acronym, definition as it appears in the text). Every acronym is used at
# most once in the corpus, so no document can lean on another's text.
PLANTED = [
    ("CG", "conjugate gradient"),
    ("QP", "quadratic programming"),
    ("LP", "linear programming"),
    ("DP", "dynamic programming"),
    ("GC", "garbage collector"),
    ("RT", "response time"),
    ("FS", "file system"),
    ("VM", "virtual machine"),
    ("IR", "information retrieval"),
    ("ML", "machine learning"),
    ("NN", "nearest neighbour"),
    ("KB", "knowledge base"),
    ("SA", "simulated annealing"),
    ("GA", "genetic algorithm"),
    ("RR", "round robin"),
    ("TS", "tabu search"),
    ("WS", "work station"),
    ("MP", "message passing"),
    ("SM", "shared memory"),
    ("DM", "distributed memory"),
    ("PE", "processing element"),
    ("FU", "functional unit"),
    ("BP", "branch prediction"),
    ("RF", "register file"),
    ("IC", "integrated circuit"),
    ("CA", "cellular automaton"),
    ("MT", "machine translation"),
    ("SR", "speech recognition"),
    ("NL", "natural language"),
    ("CF", "context free"),
    ("RE", "regular expression"),
    ("FA", "finite automaton"),
    ("PN", "Petri net"),
    ("BB", "branch and bound"),
    ("DC", "divide and conquer"),
    ("UI", "user interface"),
    ("WM", "window manager"),
    ("SE", "software engineering"),
    ("TC", "type checker"),
    ("LS", "local search"),
    ("EM", "expectation maximisation"),
    ("MC", "Monte Carlo"),
    ("MD", "molecular dynamics"),
    ("FE", "finite element"),
    ("FD", "finite difference"),
    ("QA", "quality assurance"),
    ("RA", "resource allocation"),
    ("JS", "job scheduler"),
    ("LB", "load balancing"),
    ("TM", "Turing machine"),
    ("SP", "shortest path"),
    ("ST", "spanning tree"),
    ("CS", "critical section"),
    ("DL", "description logic"),
    ("PL", "programming language"),
    ("LCS", "longest common subsequence"),
    ("FFT", "fast Fourier transform"),
    ("DFS", "depth first search"),
    ("BFS", "breadth first search"),
    ("SVD", "singular value decomposition"),
    ("PCA", "principal component analysis"),
    ("RPC", "remote procedure call"),
    ("TLB", "translation lookaside buffer"),
    ("DMA", "direct memory access"),
    ("ALU", "arithmetic logic unit"),
    ("CPU", "central processing unit"),
    ("RAM", "random access memory"),
    ("ROM", "read only memory"),
    ("MTU", "maximum transmission unit"),
    ("WAN", "wide area network"),
    ("LAN", "local area network"),
    ("DNS", "domain name system"),
    ("FTP", "file transfer protocol"),
    ("GUI", "graphical user interface"),
    ("API", "application programming interface"),
    ("IDE", "integrated development environment"),
    ("DAG", "directed acyclic graph"),
    ("NFA", "nondeterministic finite automaton"),
    ("DFA", "deterministic finite automaton"),
    ("CFG", "context free grammar"),
    ("BNF", "Backus Naur form"),
    ("OCR", "optical character recognition"),
    ("HMM", "hidden Markov model"),
    ("SVM", "support vector machine"),
    ("EDF", "earliest deadline first"),
    ("LRU", "least recently used"),
    ("MPI", "message passing interface"),
    ("PVM", "parallel virtual machine"),
    ("SOR", "successive over-relaxation"),
    ("ADT", "abstract data type"),
    ("OOP", "object-oriented programming"),
    ("SQL", "structured query language"),
    ("ODE", "ordinary differential equation"),
    ("PDE", "partial differential equation"),
    ("LMS", "least mean squares"),
    ("MSE", "mean squared error"),
    ("SNR", "signal-to-noise ratio"),
    ("BER", "bit error rate"),
    ("CRC", "cyclic redundancy check"),
    ("ECC", "error correcting code"),
    ("MAC", "medium access control"),
    ("TCP", "transmission control protocol"),
    ("UDP", "user datagram protocol"),
    ("ILP", "integer linear programming"),
    ("MIP", "mixed integer programming"),
    ("TSP", "travelling salesman problem"),
    ("VRP", "vehicle routing problem"),
    ("CSP", "constraint satisfaction problem"),
    ("SAT", "satisfiability"),
    ("MUTEX", "mutual exclusion"),
    ("MODSIM", "modelling and simulation"),
    ("INFOCOM", "information communications"),
    ("LISP", "list processing"),
    ("COBOL", "common business oriented language"),
    ("FORTRAN", "formula translation"),
    ("ALGOL", "algorithmic language"),
    ("VLIW", "very long instruction word"),
    ("RISC", "reduced instruction set computer"),
    ("CISC", "complex instruction set computer"),
    ("SIMD", "single instruction multiple data"),
    ("MIMD", "multiple instruction multiple data"),
    ("NUMA", "non-uniform memory access"),
    ("FIFO", "first in first out"),
    ("VLSI", "very large scale integration"),
    ("ASIC", "application specific integrated circuit"),
    ("FPGA", "field programmable gate array"),
    ("CMOS", "complementary metal oxide semiconductor"),
    ("DRAM", "dynamic random access memory"),
    ("SRAM", "static random access memory"),
    ("RAID", "redundant arrays of inexpensive disks"),
    ("WYSIWYG", "what you see is what you get"),
    ("KNN", "k nearest neighbour"),
    ("SPMD", "single program multiple data"),
    ("CORBA", "common object request broker architecture"),
    ("PRAM", "parallel random access machine"),
    ("BSP", "bulk synchronous parallel"),
    ("NOW", "network of workstations"),
    ("QBF", "quantified boolean formula"),
    ("BDD", "binary decision diagram"),
    ("CTL", "computation tree logic"),
    ("LTL", "linear temporal logic"),
    ("TLA", "temporal logic of actions"),
]

# Definitions no code can express: letters out of order, foreign
# expansions, plurals, and letters from inside words.
NEGATIVES = [
    ("ISO", "International Organisation for Standardisation", "letters out of order"),
    ("NWO", "Dutch national research council", "foreign expansion"),
    ("PITS", "Populated Information Terrains", "capitalised plural"),
    ("CVEs", "Collaborative Virtual Environments", "lower-case plural"),
    ("NETBW", "network bandwidth", "letters from inside a word"),
    ("JPTN", "Jumping Petri Net", "letters from inside a word"),
    ("XMS", "extended memory specification", "letters from inside a word"),
    ("UTC", "coordinated universal time", "letters out of order"),
    ("CNRS", "French national research centre", "foreign expansion"),
    ("XVAL", "cross validation", "letters from inside a word"),
    ("PDUs", "protocol data units", "lower-case plural"),
    ("DBMS", "database management system", "letters from inside a word"),
]

# Upper-case words that are not defined anywhere nearby.
NOISE = [
    "The prototype was shown on TV during the spring open day.",
    "Most of the survey sites were in the UK and the rest were further south.",
    "A second team in the US repeated the measurements a year later.",
    "By the time the last run finished at six PM the results were already clear.",
    "The operator replied that everything was OK and the run continued.",
    "Several partners in the EU contributed data to the shared archive.",
    "The first session started at nine AM with a short review of the plan.",
    "Nobody in the group had an IT background when the work began.",
]

DEFINE_BEFORE = [
    "In this report we describe {d} ({a}) and its use in the project.",
    "The second part of the study concerns {d} ({a}) in larger systems.",
    "Our group has spent several years working on {d} ({a}) with good results.",
    "Earlier work relied heavily on {d} ({a}) for most of the experiments.",
    "This section introduces {d} ({a}) before turning to the main results.",
    "We then review {d} ({a}) as it is used in current practice.",
]

DEFINE_AFTER = [
    "The {a} ({d}) is introduced in this section.",
    "Here {a} stands for {d} throughout the report.",
    "The term {a} ({d}) will be used from now on.",
]

REUSE = [
    "Most of the later measurements were taken with the {a} in place.",
    "A revised version of the {a} was prepared for the final round.",
    "Results for the {a} are summarised at the end of the report.",
    "The {a} behaved well under every load that was tried.",
    "Further work on the {a} is planned for the coming year.",
]

NEGATIVE_TEMPLATES = [
    "A short note on the {d} ({a}) appears in the appendix.",
    "The earlier draft mentioned the {d} ({a}) only in passing.",
]

TOPICS = [
    "parallel computation", "language processing", "storage systems", "network design",
    "numerical methods", "program analysis", "machine architecture", "search and optimisation",
]

TOKEN = re.compile(r"[A-Za-z]+")


def tokens(text):
    return [(m.group(), m.start()) for m in TOKEN.finditer(text)]


def is_candidate(word):
    return 2 <= len(word) <= 10 and word.isupper()


def realizable(toks, acr_index, first, last):
    """True if some legal code selects words first..last (stream indices,
    first and last both contributing letters) and spells the acronym."""
    acronym = toks[acr_index][0].lower()
    if last < acr_index:
        direction_ok = acr_index - first <= WINDOW
    else:
        direction_ok = last - acr_index <= WINDOW
    if not direction_ok or first > last:
        return False
    words = [toks[i][0].lower() for i in range(first, last + 1)]

    def search(i, consumed, must_use):
        if consumed == len(acronym):
            return i == len(words)
        if i >= len(words):
            return False
        word = words[i]
        # Use word i.
        for n in range(1, min(MAX_LETTERS, len(word), len(acronym) - consumed) + 1):
            if word[:n] != acronym[consumed:consumed + n]:
                break
            if i == len(words) - 1 and consumed + n != len(acronym):
                continue
            if search(i + 1, consumed + n, False):
                return True
        # Skip word i, unless it is the first or last of the span.
        return not must_use and i != len(words) - 1 and search(i + 1, consumed, False)

    return search(0, 0, True)


def prose_sentences(path):
    text = path.read_text()
    out = []
    for para in text.split("\n\n"):
        para = " ".join(para.split())
        for s in re.split(r"(?<=[.!?])\s+", para):
            words = s.split()
            if 8 <= len(words) <= 35 and not re.search(r"\d", s) and not any(is_candidate(w) for w, _ in tokens(s)):
                out.append(s)
    return out


def build_document(rng, index, planted, negatives, prose):
    topic = rng.choice(TOPICS)
    title = f"Working note {index + 1} on {topic}"
    parts = [title, ""]
    items = []  # (sentence, acronym, definition, kind)
    for acronym, definition in planted:
        if rng.random() < 0.25:
            items.append((rng.choice(DEFINE_AFTER), acronym, definition, "planted"))
        else:
            items.append((rng.choice(DEFINE_BEFORE), acronym, definition, "planted"))
    for acronym, definition, _ in negatives:
        items.append((rng.choice(NEGATIVE_TEMPLATES), acronym, definition, "negative"))
    rng.shuffle(items)
    noise = rng.sample(NOISE, rng.randint(2, 4))
    reuses = []
    body = []
    for sentence, acronym, definition, kind in items:
        paragraph = rng.sample(prose, rng.randint(2, 3))
        paragraph.append(sentence.format(a=acronym, d=definition))
        paragraph.extend(rng.sample(prose, rng.randint(2, 3)))
        if reuses and rng.random() < 0.6:
            paragraph.insert(1, reuses.pop(0))
        body.append((paragraph, acronym, definition, kind))
        if kind == "planted":
            for _ in range(rng.randint(1, 2)):
                reuses.append(rng.choice(REUSE).format(a=acronym))
        if noise and rng.random() < 0.4:
            body.append(([noise.pop()] + rng.sample(prose, 2), None, None, None))
    tail = reuses + noise
    while tail:
        chunk = [tail.pop(0)] + rng.sample(prose, 2)
        body.append((chunk, None, None, None))

    text = "\n\n".join(p for p in parts if p) + "\n\n"
    records = []
    for paragraph, acronym, definition, kind in body:
        start = len(text)
        para_text = " ".join(paragraph)
        text += para_text + "\n\n"
        if acronym is None:
            continue
        # Locate the planted sentence inside the paragraph.
        for sentence in paragraph:
            if re.search(r"\b" + re.escape(acronym) + r"\b", sentence) and definition in sentence:
                break
        else:
            raise AssertionError(f"lost sentence for {acronym}")
        s_off = start + para_text.index(sentence)
        d_off = s_off + sentence.index(definition)
        a_off = s_off + re.search(r"\b" + re.escape(acronym) + r"\b", sentence).start()
        records.append((a_off, acronym, d_off, d_off + len(definition), kind))
    return text, records


def annotate(text, records, doc_id):
    toks = tokens(text)
    starts = {off: i for i, (_, off) in enumerate(toks)}
    ann, manifest = [], []
    for a_off, acronym, d_start, d_end, kind in records:
        span = [i for i, (_, off) in enumerate(toks) if d_start <= off < d_end]
        first, last = span[0], span[-1]
        acr_index = starts[a_off]
        definition_text = " ".join(toks[i][0] for i in range(first, last + 1))
        encodable = is_candidate(acronym) and realizable(toks, acr_index, first, last)
        if (kind == "planted") != encodable:
            raise AssertionError(f"{doc_id}: {acronym} planted={kind} encodable={encodable}")
        ann.append((a_off, acronym, toks[first][1], toks[last][1], definition_text))
        manifest.append((doc_id, a_off, acronym, kind))
    return sorted(ann), manifest


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=2024)
    parser.add_argument("--docs", type=int, default=24)
    parser.add_argument("--out", type=Path, default=ROOT / "data" / "synthetic")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    prose = prose_sentences(ROOT / "data" / "english_sample.txt")
    planted = list(PLANTED)
    rng.shuffle(planted)
    negatives = list(NEGATIVES)
    rng.shuffle(negatives)

    per_doc = len(planted) // args.docs
    args.out.mkdir(parents=True, exist_ok=True)
    for old in list(args.out.glob("*.txt")) + list(args.out.glob("*.ann")):
        old.unlink()
    manifest = []
    for i in range(args.docs):
        doc_id = f"note{i + 1:02d}"
        mine = planted[i * per_doc:(i + 1) * per_doc]
        if i == args.docs - 1:
            mine = planted[i * per_doc:]
        negs = [negatives[i]] if i < len(negatives) else []
        text, records = build_document(rng, i, mine, negs, prose)
        ann, rows = annotate(text, records, doc_id)
        (args.out / f"{doc_id}.txt").write_text(text)
        lines = ["# ann v1"] + ["\t".join(str(f) for f in r) for r in ann]
        (args.out / f"{doc_id}.ann").write_text("\n".join(lines) + "\n")
        manifest.extend(rows)

    manifest.sort()
    with open(args.out / "MANIFEST.tsv", "w") as f:
        f.write("doc\toffset\tacronym\tkind\n")
        for row in manifest:
            f.write("\t".join(str(x) for x in row) + "\n")
    kinds = [r[3] for r in manifest]
    print(
        f"{args.docs} documents, {len(manifest)} annotations "
        f"({kinds.count('planted')} planted, {kinds.count('negative')} negative)",
        file=sys.stderr,
    )


if __name__ == "__main__":
    main()
