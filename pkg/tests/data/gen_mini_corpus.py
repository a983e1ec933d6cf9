"""One-off generator for the bundled mini corpus (output is committed).

Regenerate with:  python3 tests/data/gen_mini_corpus.py

50 author files in Blog Authorship Corpus layout. Authors lean toward one of
three themes (music / food / sports) plus shared filler and function words,
so a small LDA run finds real structure. A few files carry the corpus's
known quirks: stray inline tags, a non-UTF-8 byte, an empty post.
"""

import random
from pathlib import Path

OUT = Path(__file__).parent / "mini_corpus"

MUSIC = """guitar piano drums melody song band concert album chord rhythm
singer stage tune bass violin lyrics chorus festival record studio""".split()
FOOD = """bread cheese soup recipe kitchen butter garlic onion pepper salt
dinner oven flour sugar taste plate spice roast lemon honey""".split()
SPORTS = """soccer goal team coach match player season league score training
stadium ball referee win tournament defense striker keeper pitch trophy""".split()
FILLER = """morning friend weather city house travel story picture letter
garden street market school window river coffee walk night music game""".split()
FUNCTION = "the and to of a in that it was for on with as but at this".split()

GENDERS = ["male", "female"]
INDUSTRIES = ["Arts", "Student", "Technology", "Education", "indUnk"]
SIGNS = ["Aries", "Taurus", "Gemini", "Cancer", "Leo", "Virgo", "Libra",
         "Scorpio", "Sagittarius", "Capricorn", "Aquarius", "Pisces"]
DATES = ["02,January,2004", "15,March,2004", "07,May,2004", "21,June,2004",
         "30,August,2004", "11,October,2003", "28,November,2003", "09,February,2003"]


def make_post(rng, theme, n_words):
    words = []
    for _ in range(n_words):
        roll = rng.random()
        if roll < 0.45:
            words.append(rng.choice(theme))
        elif roll < 0.70:
            words.append(rng.choice(FILLER))
        else:
            words.append(rng.choice(FUNCTION))
    return " ".join(words)


def main():
    rng = random.Random(20240615)
    OUT.mkdir(parents=True, exist_ok=True)
    themes = [MUSIC, FOOD, SPORTS]
    for i in range(50):
        author_id = 3100000 + i * 137
        gender = rng.choice(GENDERS)
        age = rng.randint(16, 44)
        industry = rng.choice(INDUSTRIES)
        sign = rng.choice(SIGNS)
        theme = themes[i % 3]
        n_posts = rng.randint(2, 5)
        parts = ["<Blog>"]
        for _ in range(n_posts):
            parts.append(f"<date>{rng.choice(DATES)}</date>")
            body = make_post(rng, theme, rng.randint(40, 90))
            if i == 7:
                body = body.replace(" ", " <br> ", 1)  # stray inline tag
            parts.append(f"<post>\n{body}\n</post>")
        if i == 13:
            parts.append("<post>   </post>")  # whitespace-only post
        parts.append("</Blog>")
        data = "\n".join(parts).encode("utf-8")
        if i == 21:
            data = data.replace(b"morning", b"morn\xedng", 1)  # invalid UTF-8 byte
        name = f"{author_id}.{gender}.{age}.{industry}.{sign}.xml"
        (OUT / name).write_bytes(data)
    print(f"wrote 50 files to {OUT}")


if __name__ == "__main__":
    main()
