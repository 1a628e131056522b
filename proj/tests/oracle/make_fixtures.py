#!/usr/bin/env python3
"""Generates the frozen fixtures under data/fixtures/.

Deterministic: fixed seed, explicit post schedule. The checks at the bottom
re-load the written files through oracle_lib and assert every corpus
property the test suite relies on, so a regenerated fixture either matches
the old guarantees or fails loudly here.
"""

import json
import random
import sys
from datetime import date as Date, timedelta
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
import oracle_lib as oracle

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "data" / "fixtures"

SEED = 20210430
WINDOW_START = Date(2020, 7, 1)
WINDOW_END = Date(2021, 4, 30)
SPLIT = Date(2021, 1, 1)

# Filler vocabulary: lowercase, no lexicon words, no ticker spellings.
SAFE_WORDS = [
    "the", "market", "chart", "earnings", "looking", "strong", "weekly", "update",
    "thread", "thoughts", "moon", "rocket", "squeeze", "gamma", "theta", "premium",
    "spread", "volume", "interest", "tendies", "diamond", "hands", "apes", "together",
    "printer", "monday", "friday", "opex", "volatility", "margin", "spicy", "degenerate",
]


def weekdays(start, end):
    out = []
    d = start
    while d <= end:
        if d.weekday() < 5:
            out.append(d)
        d += timedelta(days=1)
    return out


def epoch_seconds(d, minute):
    return (d - Date(1970, 1, 1)).days * 86400 + 14 * 3600 + minute * 60


def filler_text(rng, n):
    return " ".join(rng.choice(SAFE_WORDS) for _ in range(n))


# ------------------------------------------------------------- schedule
# Every clean post, with the verdicts the corpus is engineered to produce.
# tag values: p017 (three TSLA mentions, nothing else), p042 (proximity
# score 2 on two mentions), far (Buy in default mode, None in proximity).

def clean_schedule(rng):
    posts = []

    def post(day, title, selftext="", flair="DD", tag=None):
        posts.append({"date": Date.fromisoformat(day), "title": title,
                      "selftext": selftext, "flair": flair, "tag": tag})

    # Buy consensus days, 12 in 2020 and 11 in 2021.
    post("2020-07-06", "buy AAPL calls before earnings", flair="YOLO")
    post("2020-07-13", "buy TSLA calls")
    post("2020-07-13", "TSLA squeeze, buy the dip", flair="Discussion")
    post("2020-07-13", "sell TSLA puts", flair="Options")
    post("2020-07-27", "MSFT calls printing, buy more on monday")
    post("2020-08-10", "buy the dip people",
         "because honestly this whole AAPL selloff is overdone", tag="far")
    post("2020-08-19", "calls on TSLA printing huge", flair="Chart")
    post("2020-09-01", "buy $F leaps, the truck demand is wild")
    post("2020-09-15", "MSFT cloud numbers, buy every share you can", flair="dd")
    post("2020-09-28", "buy AAPL")
    post("2020-09-28", "AAPL calls only play here", flair="YOLO")
    post("2020-10-12", "TSLA battery day over, buy the fear")
    post("2020-10-26", "buy $ALL before hurricane season ends", flair="Fundamentals")
    post("2020-11-09", "vaccine monday, buy MSFT and chill", flair="news")
    post("2020-12-07", "calls are cheap right now on every single mega cap especially AAPL",
         tag="far")
    post("2021-01-04", "sp500 inclusion done, buy TSLA dips all year")
    post("2021-01-11", "buy $AAPL and AAPL calls today", flair="YOLO", tag="p042")
    post("2021-01-25", "buy MSFT before earnings")
    post("2021-01-25", "MSFT azure going parabolic, buy calls", flair="Technicals")
    post("2021-02-01", "$F electric pickup, buy shares and leaps")
    post("2021-02-08", "buy TSLA weekly calls, this chart is free money")
    post("2021-02-22", "dip incoming but honestly you should simply buy AAPL here")
    post("2021-03-08", "buy this one simple rotation trade, the answer will surprise you: MSFT",
         tag="far")
    post("2021-03-15", "buy the TSLA dip before it rips again", flair="Daily Discussion")
    post("2021-03-29", "buybacks announced, AAPL calls printing soon")
    post("2021-04-12", "insurance is boring but buy $ALL anyway")
    post("2021-04-26", "earnings beat, buy TSLA calls for the summer run", flair="Stocks")

    # Sell consensus days.
    post("2020-08-24", "sell AAPL before the event, puts cheap")
    post("2020-11-16", "sell TSLA rip")
    post("2020-11-16", "TSLA puts printing, sell every pop", flair="Technical Analysis")
    post("2021-02-15", "puts on MSFT, this selloff is real")

    # Hold verdicts (consensus stays None).
    post("2020-09-09", "hold TSLA forever", flair="Discussion")
    post("2021-02-16", "AAPL investors just hold and breathe")

    # Tied scores give no verdict.
    post("2020-12-14", "buy MSFT or sell MSFT i honestly cannot decide")

    # Negated keywords score zero.
    post("2020-09-21", "don't buy TSLA here, wait for support")
    post("2020-10-19", "do not sell MSFT yet", flair="Discussion")
    post("2021-01-19", "don't call the top on TSLA")

    # Mention-only posts (verdict None, mentions counted).
    post("2020-07-20", "TSLA TSLA", "TSLA earnings runway", tag="p017")
    post("2020-07-08", "AAPL MSFT TSLA megacap weekly thread", flair="Daily Discussion")
    post("2020-11-30", "$ALL $F value basket idea", flair="Fundamentals")
    mention_templates = [
        "{} to the moon tonight",
        "loaded up on {} today",
        "{} gang where we at",
        "watching {} at the open",
        "{} earnings tomorrow, thread below",
        "diamond hands on {}",
        "{} chart looking spicy",
        "weekend thoughts on {}",
        "the {} setup is beautiful",
    ]
    mention_days = weekdays(WINDOW_START, WINDOW_END)
    for i, sym in enumerate(
            ["AAPL", "MSFT", "TSLA", "$F", "$ALL", "AAPL", "TSLA", "MSFT", "$ALL",
             "TSLA", "AAPL", "$F", "MSFT", "TSLA", "AAPL", "MSFT", "TSLA", "AAPL",
             "$F", "TSLA", "MSFT", "AAPL", "$ALL", "TSLA", "AAPL", "MSFT", "TSLA"]):
        day = mention_days[(7 * i + 3) % len(mention_days)]
        post(day.isoformat(), mention_templates[i % len(mention_templates)].format(sym),
             flair=["DD", "Discussion", "YOLO", "Stocks"][i % 4])

    # Clean posts with no detectable mention: wrong case, missing '$' on
    # ambiguous symbols, or nothing ticker-like at all.
    post("2020-07-15", "F in the chat boys", flair="Discussion")
    post("2020-08-05", "ALL in on spy leaps", flair="YOLO")
    post("2020-09-02", "tsla to the moon", flair="Discussion")
    post("2020-10-07", "aapl looking strong this week")
    post("2020-11-04", "brk b value play thread", flair="Fundamentals")
    post("2021-01-06", "msft is a boomer pick and i respect it", flair="Discussion")
    post("2021-03-03", "weekly earnings thread stay safe everyone", flair="Daily Discussion")
    post("2021-04-07", "market looking heavy into opex", flair="Technical Analysis")

    # Clean but outside the study window; ingest keeps them, the window
    # filter drops them.
    post("2020-06-15", "buy TSLA on this june dip")
    post("2021-05-05", "sell AAPL into strength")
    post("2021-05-10", "MSFT calls for june", flair="Options")

    # Pad with no-mention chatter to exactly 117 clean posts.
    filler_days = weekdays(WINDOW_START, WINDOW_END)
    while len(posts) < 117:
        day = filler_days[(11 * len(posts)) % len(filler_days)]
        post(day.isoformat(), filler_text(rng, rng.randint(4, 9)),
             filler_text(rng, rng.randint(0, 14)),
             flair=["DD", "Discussion", "News", "Options", "Futures"][len(posts) % 5])
    assert len(posts) == 117, len(posts)
    return posts


def dropped_schedule(rng):
    days = weekdays(WINDOW_START, WINDOW_END)
    posts = []

    def post(i, flair, **kw):
        entry = {"date": days[(13 * i + 5) % len(days)], "flair": flair,
                 "title": filler_text(rng, rng.randint(3, 8)),
                 "selftext": filler_text(rng, rng.randint(0, 10)), "tag": None}
        entry.update(kw)
        posts.append(entry)

    # 25 invisible: removal marker or scrubbed body. One carries a reactive
    # flair; removal is still what drops it.
    for i in range(15):
        post(i, "DD", removed_by_category="moderator")
    posts[3]["flair"] = "Meme"
    for i in range(15, 21):
        post(i, "News", selftext="[removed]")
    for i in range(21, 25):
        post(i, "Discussion", selftext="[deleted]")

    # 35 reactive flairs, case scrambled.
    reactive = ["Meme", "GAIN", "Loss", "shitpost", "Satire", "Storytime",
                "Donation", "meme", "Gain", "LOSS"]
    for i in range(35):
        post(40 + i, reactive[i % len(reactive)])

    # 23 unknown flairs, including a missing flair field.
    unknown = ["Poll", "Weekend Megathread", "Question", "Earnings Call", "Rant", None]
    for i in range(23):
        post(80 + i, unknown[i % len(unknown)])
    assert len(posts) == 83, len(posts)
    return posts


def write_posts(rng):
    entries = clean_schedule(rng) + dropped_schedule(rng)
    rng.shuffle(entries)

    # Pin the two reference posts at their well-known ids.
    for tag, index in (("p017", 17), ("p042", 42)):
        src = next(i for i, e in enumerate(entries) if e["tag"] == tag)
        entries[index], entries[src] = entries[src], entries[index]

    lines = []
    far_ids = []
    for i, e in enumerate(entries):
        pid = "p%03d" % i
        if e["tag"] == "far":
            far_ids.append(pid)
        obj = {"id": pid, "created_utc": epoch_seconds(e["date"], i % 380),
               "title": e["title"], "selftext": e.get("selftext", ""),
               "subreddit": "wallstreetbets", "score": (i * 37) % 900,
               "num_comments": (i * 11) % 300}
        if e["flair"] is not None:
            obj["link_flair_text"] = e["flair"]
        if "removed_by_category" in e:
            obj["removed_by_category"] = e["removed_by_category"]
        if i % 29 == 4:
            obj["created_utc"] = float(obj["created_utc"])  # dumps may carry floats
        lines.append(json.dumps(obj, separators=(",", ":")))

    path = FIXTURES / "posts.jsonl"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return far_ids


def write_universe():
    rows = [
        ("AAPL", "Apple Inc.", "Technology", "0"),
        ("ALL", "The Allstate Corporation", "Financial Services", "1"),
        ("F", "Ford Motor Company", "Consumer Cyclical", "0"),
        ("MSFT", "Microsoft Corporation", "Technology", "0"),
        ("TSLA", "Tesla, Inc.", "Consumer Cyclical", "0"),
    ]
    out = ["symbol,name,sector,ambiguous"]
    for row in rows:
        out.append(",".join(oracle.escape_field(f) for f in row))
    (FIXTURES / "universe.csv").write_text("\n".join(out) + "\n", encoding="utf-8")


def write_prices(rng):
    # (base, [(phase end, daily drift, daily noise)...]); None ends last phase.
    specs = {
        "AAPL": (95.0, [(None, 0.0022, 0.006)]),
        "ALL": (92.0, [(None, -0.0012, 0.007)]),
        "F": (6.5, [(None, 0.0001, 0.014)]),
        "MSFT": (200.0, [(None, 0.0010, 0.008)]),
        "TSLA": (90.0, [(Date(2021, 2, 1), 0.0006, 0.011), (None, 0.0095, 0.010)]),
    }
    days = []
    d = Date(2020, 6, 1)
    while len(days) < 250:
        if d.weekday() < 5:
            days.append(d)
        d += timedelta(days=1)

    out = ["symbol,date,open,high,low,close,volume"]
    for si, (symbol, (base, phases)) in enumerate(sorted(specs.items())):
        prev = base
        for i, day in enumerate(days):
            drift, sigma = next((dr, sg) for end, dr, sg in phases
                                if end is None or day < end)
            ret = drift + sigma * rng.uniform(-1.7320508, 1.7320508)
            close = round(prev * (1.0 + ret), 2)
            opn = round(prev * (1.0 + (sigma / 3.0) * rng.uniform(-1.0, 1.0)), 2)
            high = round(max(opn, close) * (1.0 + 0.004 * rng.random()), 2)
            low = round(min(opn, close) * (1.0 - 0.004 * rng.random()), 2)
            high = max(high, opn, close)
            low = min(low, opn, close)
            volume = 800000 + i * 1500 + si * 9973
            out.append("%s,%s,%.2f,%.2f,%.2f,%.2f,%d"
                       % (symbol, day.isoformat(), opn, high, low, close, volume))
            prev = close
    (FIXTURES / "prices.csv").write_text("\n".join(out) + "\n", encoding="utf-8")


def write_analysts(rng):
    rows = [
        ("2020-07-06", "Hawkeye Securities", "AAPL", "Buy"),
        ("2020-07-20", "Hawkeye Securities", "TSLA", "Overweight"),
        ("2020-08-03", "Hawkeye Securities", "MSFT", "Outperform"),
        ("2020-08-17", "Hawkeye Securities", "AAPL", "Strong Buy"),
        ("2020-09-08", "Hawkeye Securities", "F", "Market Outperform"),
        ("2020-10-05", "Hawkeye Securities", "ALL", "Neutral"),
        ("2020-11-02", "Hawkeye Securities", "TSLA", "Positive"),
        ("2020-12-01", "Hawkeye Securities", "MSFT", "Equal-Weight"),
        ("2021-01-05", "Hawkeye Securities", "AAPL", "Sector Outperform"),
        ("2021-02-01", "Hawkeye Securities", "TSLA", "Buy"),
        ("2021-03-01", "Hawkeye Securities", "F", "Hold"),
        ("2021-04-05", "Hawkeye Securities", "MSFT", "Underperform"),
        ("2020-07-13", "Bluestone Partners", "MSFT", "Market Perform"),
        ("2020-08-24", "Bluestone Partners", "AAPL", "Overweight"),
        ("2020-09-21", "Bluestone Partners", "TSLA", "In-Line"),
        ("2020-10-19", "Bluestone Partners", "F", "Buy"),
        ("2020-12-14", "Bluestone Partners", "ALL", "Sector Perform"),
        ("2021-01-19", "Bluestone Partners", "AAPL", "Outperform"),
        ("2021-02-22", "Bluestone Partners", "TSLA", "Peer Perform"),
        ("2021-03-22", "Bluestone Partners", "MSFT", "Strong Buy"),
    ]
    rng.shuffle(rows)  # loader must not depend on file order
    out = ["date,firm,symbol,label"]
    for row in rows:
        out.append(",".join(oracle.escape_field(f) for f in row))
    (FIXTURES / "analysts.csv").write_text("\n".join(out) + "\n", encoding="utf-8")


def write_config():
    (FIXTURES / "run.conf").write_text(
        "# fixture pipeline; paths resolve relative to this file\n"
        "posts = posts.jsonl\n"
        "universe = universe.csv\n"
        "prices = prices.csv\n"
        "analysts = analysts.csv\n"
        "start = 2020-07-01\n"
        "end = 2021-04-30\n"
        "split = 2021-01-01\n"
        "quantile = 0.15\n"
        "horizons = 7,30,90\n"
        "conditions = none,ma30,ma90\n"
        "min_posts = 1\n"
        "top_k = 20\n"
        "portfolio_k = 50\n",
        encoding="utf-8")


# ----------------------------------------------------------- self-check

def check(far_ids):
    posts, stats = oracle.load_posts(FIXTURES / "posts.jsonl")
    assert stats == {"read": 200, "malformed": 0, "invisible": 25, "reactive": 35,
                     "unknown_flair": 23, "retained": 117}, stats
    raw = (FIXTURES / "posts.jsonl").read_text(encoding="utf-8")
    assert raw.isascii()

    universe = oracle.load_universe(FIXTURES / "universe.csv")
    assert universe["F"]["ambiguous"] and universe["ALL"]["ambiguous"]

    window = [p for p in posts if WINDOW_START <= p["date"] <= WINDOW_END]
    assert len(window) == 114, len(window)

    by_id = {p["id"]: p for p in posts}
    p017 = by_id["p017"]
    assert oracle.detect_tickers(p017["text"], universe) == [("TSLA", 3)]
    sig = oracle.classify_post(p017, "TSLA", universe, "default")
    assert (sig["buy"], sig["hold"], sig["sell"], sig["verdict"]) == (0, 0, 0, "None")

    p042 = by_id["p042"]
    sig = oracle.classify_post(p042, "AAPL", universe, "proximity")
    assert (sig["buy"], sig["mentions"], sig["verdict"]) == (2, 2, "Buy"), sig

    for pid in far_ids:
        post = by_id[pid]
        [(symbol, _)] = oracle.detect_tickers(post["text"], universe)
        assert oracle.classify_post(post, symbol, universe, "default")["verdict"] == "Buy", pid
        assert oracle.classify_post(post, symbol, universe, "proximity")["verdict"] == "None", pid

    def buy_days(mode):
        daily = oracle.aggregate_daily(oracle.scan_posts(window, universe, mode))
        return [(d["symbol"], d["date"]) for d in daily if d["consensus"] == "Buy"]

    default_buys = buy_days("default")
    early = [b for b in default_buys if b[1] < SPLIT]
    assert len(default_buys) == 23 and len(early) == 12, (len(default_buys), len(early))
    prox_buys = buy_days("proximity")
    early = [b for b in prox_buys if b[1] < SPLIT]
    assert len(prox_buys) == 20 and len(early) == 10, (len(prox_buys), len(early))

    prices = oracle.load_prices(FIXTURES / "prices.csv")
    assert sorted(prices) == ["AAPL", "ALL", "F", "MSFT", "TSLA"]
    assert all(len(bars) == 250 for bars in prices.values())
    changes = {s: oracle.total_change(b, WINDOW_START, WINDOW_END) for s, b in prices.items()}
    medians = {s: oracle.median_3m_change(b, WINDOW_START, WINDOW_END) for s, b in prices.items()}
    assert all(v is not None for v in changes.values())
    assert max(changes, key=changes.get) == "TSLA", changes
    assert max(medians, key=medians.get) == "AAPL", medians
    top = oracle.top_performers(prices, WINDOW_START, WINDOW_END, 0.15)
    assert top["symbols"] == {"AAPL", "TSLA"} and top["eligible"] == 5, top

    wsb = oracle.signals_from_consensus(
        oracle.aggregate_daily(oracle.scan_posts(window, universe, "default")), "WSB")
    assert len(oracle.apply_ma_condition(wsb, prices, 30)) > 0
    cell = oracle.evaluate(wsb, prices, 90, "WSB", "none")
    assert 0 < cell["n_evaluable"] < cell["n_signals"], cell

    recs = oracle.load_recs(FIXTURES / "analysts.csv")
    assert len(recs) == 20
    counts = {"Buy": 0, "Hold": 0, "Sell": 0, "Unknown": 0}
    for rec in recs:
        counts[rec["verdict"]] += 1
    assert counts == {"Buy": 12, "Hold": 7, "Sell": 1, "Unknown": 0}, counts
    assert oracle.top_firms(recs, 20) == ["Hawkeye Securities", "Bluestone Partners"]

    print("fixtures ok: 200 posts (117 clean), %d buy days default / %d proximity,"
          " top set %s" % (len(default_buys), len(prox_buys), sorted(top["symbols"])))


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    rng = random.Random(SEED)
    far_ids = write_posts(rng)
    write_universe()
    write_prices(random.Random(SEED + 1))
    write_analysts(random.Random(SEED + 2))
    write_config()
    check(far_ids)


if __name__ == "__main__":
    main()
