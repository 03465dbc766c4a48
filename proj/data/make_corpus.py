#!/usr/bin/env python3
# Copyright 2026 The wsdecode Authors.
# SPDX-License-Identifier: Apache-2.0
"""Writes corpus.txt: template sentences over the words in lexicon.txt."""

import random

SUBJ = "I YOU WE THEY HE SHE".split()
DET = "THE A MY YOUR OUR THEIR".split()
ADJ = "BIG SMALL OLD NEW GOOD BAD RED BLUE GREEN HAPPY COLD HOT FAST VAST FINE MAD".split()
NOUN = ("BAT CAT HAT MAT PAD PEN BOOK BOX DOG FISH BIRD TREE HOUSE CAR BOAT ROAD "
        "PARK WATER FOOD VAN FAN PIG PILL MILL FERRY ZOO SEAL MOAT BANK BREAD PEAR "
        "PAIR BEAR PIECE SAIL TAIL ROSE FLOWER FLOUR FRIEND TEACHER CHILD SON SUN "
        "MOTHER FATHER HOME SCHOOL TOWN MONEY VINE").split()
VERB = "SEE SAW LIKE WANT NEED GET GOT MAKE TAKE GIVE BUY PAY LOVE CALL HAVE READ MEET".split()
IVERB = "GO WENT COME WALK RUN SWIM PLAY SING EAT DRINK WAIT".split()
PREP = "IN ON AT WITH FROM NEAR BY FOR TO".split()
TIME = "TODAY TOMORROW NOW HERE THERE".split()
NUM = "ONE TWO FOUR EIGHT MANY SOME ALL".split()

TEMPLATES = [
    ["S", "V", "D", "N"],
    ["S", "V", "D", "A", "N"],
    ["D", "N", "IS", "A"],
    ["D", "A", "N", "WAS", "P", "D", "N"],
    ["S", "IV", "P", "D", "N"],
    ["S", "IV", "T"],
    ["S", "WILL", "IV", "T"],
    ["S", "CAN", "V", "NUM", "N"],
    ["S", "V", "D", "N", "T"],
    ["S", "KNOW", "D", "N"],
    ["S", "HAVE", "NUM", "N"],
    ["S", "ATE", "D", "MEAT", "T"],
    ["S", "WON", "D", "N"],
    ["S", "HEAR", "D", "N"],
    ["IT", "IS", "A", "DAY", "FOR", "D", "N"],
    ["S", "SAW", "THE", "SEA", "T"],
    ["THE", "WIND", "BLEW", "AND", "THE", "RAIN", "WENT"],
    ["S", "WAIT", "AN_HOUR"],
    ["THE", "N", "IS", "NOT", "A"],
    ["S", "NEED", "SOME", "N", "T"],
]


def fill(slot, rng):
    table = {"S": SUBJ, "D": DET, "A": ADJ, "N": NOUN, "V": VERB, "IV": IVERB,
             "P": PREP, "T": TIME, "NUM": NUM}
    if slot in table:
        return [rng.choice(table[slot])]
    if slot == "AN_HOUR":
        return ["ONE", "HOUR"]
    return [slot]


def main():
    rng = random.Random(7)
    with open("corpus.txt", "w") as f:
        for _ in range(3000):
            words = []
            for slot in rng.choice(TEMPLATES):
                words += fill(slot, rng)
            f.write(" ".join(words) + "\n")


if __name__ == "__main__":
    main()
