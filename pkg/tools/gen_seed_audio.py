"""Regenerate the placeholder seed audio assets.

Each seed word gets a short mono 16-bit tone so the audio endpoint has real
bytes to serve. Frequencies differ per asset only so files are distinguishable.
"""

import json
import math
import struct
import wave
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "wordify" / "data"
RATE = 8000
SECONDS = 0.12


def write_tone(path: Path, freq: float) -> None:
    n = int(RATE * SECONDS)
    frames = b"".join(
        struct.pack("<h", int(12000 * math.sin(2 * math.pi * freq * i / RATE)))
        for i in range(n)
    )
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(RATE)
        wav.writeframes(frames)


def main() -> None:
    out = DATA / "audio"
    out.mkdir(parents=True, exist_ok=True)
    keys = []
    with open(DATA / "seed_lexicon.jsonl", encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                rec = json.loads(line)
                if rec.get("audio"):
                    keys.append(rec["audio"])
    for i, key in enumerate(sorted(keys)):
        write_tone(out / key, 320 + 25 * i)
    print(f"wrote {len(keys)} assets to {out}")


if __name__ == "__main__":
    main()
