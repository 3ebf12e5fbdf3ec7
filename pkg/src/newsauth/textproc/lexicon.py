"""Word lists keyed by Penn Treebank tag.

Backs two generators: the tagger training corpus recipe and the
synthetic two-style benchmark corpus.  Words were picked to be mostly
unambiguous for their tag so that template-assigned tags are correct by
construction.
"""

LEXICON: dict[str, list[str]] = {
    "DT": ["the", "a", "an", "this", "that", "these", "those", "each", "every", "another"],
    "PDT": ["all", "both", "half"],
    "NN": [
        "cat", "dog", "market", "company", "report", "city", "house", "idea",
        "plan", "game", "team", "phone", "device", "engine", "road", "story",
        "school", "water", "music", "film", "garden", "doctor", "window",
        "letter", "village", "bridge", "driver", "editor", "reader", "writer",
        "farmer", "singer", "button", "screen", "signal", "network", "sensor",
        "budget", "policy", "voter", "moment", "morning", "evening", "table",
        "chair", "kitchen", "coffee", "bottle", "ticket", "airport", "station",
        "train", "river", "mountain", "forest", "animal", "bird", "horse",
        "mat", "economy", "factory", "library", "museum", "office", "winter",
        "summer", "keyboard", "battery", "update", "browser",
    ],
    "NNS": [
        "cats", "dogs", "markets", "companies", "reports", "cities", "houses",
        "ideas", "plans", "games", "teams", "phones", "devices", "engines",
        "roads", "stories", "schools", "gardens", "doctors", "windows",
        "letters", "villages", "bridges", "drivers", "editors", "readers",
        "writers", "farmers", "singers", "buttons", "screens", "signals",
        "networks", "sensors", "budgets", "policies", "voters", "moments",
        "tables", "chairs", "bottles", "tickets", "airports", "stations",
        "trains", "rivers", "mountains", "forests", "animals", "birds",
        "horses", "children", "factories", "libraries", "museums", "offices",
        "keyboards", "batteries", "updates", "browsers", "users",
    ],
    "NNP": [
        "John", "Mary", "Alice", "Robert", "Laura", "Daniel", "Smith",
        "Johnson", "London", "Paris", "Berlin", "Tokyo", "Oxford", "Madrid",
        "Monday", "Tuesday", "Friday", "January", "February", "October",
        "Europe", "Asia", "America", "Thames", "Avalon", "Northbrook",
    ],
    "NNPS": ["Americans", "Europeans", "Germans", "Italians"],
    "VB": [
        "run", "walk", "play", "build", "write", "open", "close", "start",
        "stop", "buy", "sell", "make", "take", "give", "find", "keep", "help",
        "move", "turn", "call", "work", "learn", "teach", "grow", "win",
        "lose", "pay", "send", "bring", "hold", "meet", "test", "launch",
        "improve", "reduce", "increase", "visit", "read", "be",
    ],
    "VBD": [
        "ran", "walked", "played", "built", "wrote", "opened", "closed",
        "started", "stopped", "bought", "sold", "made", "took", "gave",
        "found", "kept", "helped", "moved", "turned", "called", "worked",
        "learned", "taught", "grew", "won", "lost", "paid", "sent", "brought",
        "held", "met", "tested", "launched", "improved", "reduced",
        "increased", "visited", "sat", "said", "left", "arrived", "announced",
        "reported", "confirmed", "revealed", "declined", "was", "were",
    ],
    "VBG": [
        "running", "walking", "playing", "building", "writing", "opening",
        "closing", "starting", "stopping", "buying", "selling", "making",
        "taking", "giving", "finding", "keeping", "helping", "moving",
        "turning", "calling", "working", "learning", "teaching", "growing",
        "winning", "losing", "paying", "sending", "bringing", "holding",
        "meeting", "testing", "launching", "improving", "reducing",
        "increasing", "visiting", "being",
    ],
    "VBN": [
        "built", "written", "opened", "closed", "started", "stopped",
        "bought", "sold", "made", "taken", "given", "found", "kept", "helped",
        "moved", "turned", "called", "worked", "learned", "taught", "grown",
        "won", "lost", "paid", "sent", "brought", "held", "met", "tested",
        "launched", "improved", "reduced", "increased", "visited",
        "announced", "reported", "confirmed", "chosen", "broken", "seen",
        "done", "been",
    ],
    "VBP": [
        "run", "walk", "play", "build", "write", "need", "want", "like",
        "know", "see", "believe", "expect", "hope", "say", "think", "work",
        "live", "stay", "agree", "remain", "are", "have",
    ],
    "VBZ": [
        "runs", "walks", "plays", "builds", "writes", "needs", "wants",
        "likes", "knows", "sees", "believes", "expects", "hopes", "says",
        "thinks", "works", "lives", "stays", "agrees", "remains", "is", "has",
    ],
    "JJ": [
        "big", "small", "new", "old", "good", "bad", "fast", "slow", "happy",
        "quiet", "bright", "dark", "clean", "early", "late", "strong", "weak",
        "local", "global", "digital", "modern", "simple", "quick", "tall",
        "short", "warm", "cold", "cheap", "popular", "recent", "rare",
        "common", "public", "private", "green", "red", "blue", "young",
        "busy", "calm", "safe", "remote", "main", "major", "minor", "final",
        "daily", "fine",
    ],
    "JJR": [
        "bigger", "smaller", "newer", "older", "better", "worse", "stronger",
        "weaker", "cheaper", "taller", "shorter", "warmer", "colder",
        "younger", "busier", "safer", "slower", "quicker",
    ],
    "JJS": [
        "biggest", "smallest", "newest", "oldest", "best", "worst",
        "strongest", "weakest", "cheapest", "tallest", "shortest", "warmest",
        "coldest", "youngest", "busiest", "safest", "slowest", "quickest",
    ],
    "RB": [
        "quickly", "slowly", "quietly", "brightly", "clearly", "easily",
        "carefully", "happily", "sadly", "loudly", "gently", "recently",
        "finally", "often", "never", "always", "sometimes", "now", "soon",
        "today", "again", "almost", "well", "really", "nearly", "probably",
        "certainly", "directly", "deeply", "widely", "strongly", "barely",
        "here", "twice", "n't", "not",
    ],
    "RBR": ["sooner", "harder", "longer", "faster"],
    "RBS": ["most", "least"],
    "IN": [
        "in", "on", "at", "by", "for", "with", "from", "into", "through",
        "during", "before", "after", "above", "below", "under", "over",
        "about", "against", "between", "without", "of", "near", "across",
        "behind", "beyond", "inside", "outside", "toward", "upon", "since",
        "until", "while", "because", "although", "though", "if", "unless",
    ],
    "CC": ["and", "but", "or", "nor", "yet", "so"],
    "MD": ["can", "could", "will", "would", "may", "might", "must", "shall", "should", "'ll"],
    "WDT": ["which"],
    "WP": ["who", "whom", "what"],
    "WP$": ["whose"],
    "WRB": ["when", "where", "why", "how"],
    "PRP": ["he", "she", "it", "they", "we", "you", "i", "him", "them", "us", "me"],
    "PRP$": ["his", "their", "our", "its", "my", "your"],
    "CD": ["one", "two", "three", "four", "five", "ten", "hundred", "2", "3", "10", "25", "100", "2020"],
    "EX": ["there"],
    "TO": ["to"],
    "POS": ["'s"],
    ".": [".", "!", "?"],
    ",": [","],
    ":": [":", ";"],
    "``": ["``"],
    "''": ["''"],
}
