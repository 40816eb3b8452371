#!/usr/bin/env python3
"""Writes the bundled synthetic zh-en sample corpus under data/sample/.

Outputs (one sentence per line, aligned by line number):
  zh.seg  segmented Chinese, words separated by spaces
  zh.tag  Chinese tokens as word|POS
  en.tok  tokenized English
  en.tag  English tokens as word|POS
"""
import os
import random
import sys

SUBJECTS = [
    ([("我", "PN")], [("i", "PRP")]),
    ([("他", "PN")], [("he", "PRP")]),
    ([("她", "PN")], [("she", "PRP")]),
    ([("我们", "PN")], [("we", "PRP")]),
    ([("老师", "NN")], [("the", "DT"), ("teacher", "NN")]),
    ([("学生", "NN")], [("the", "DT"), ("student", "NN")]),
    ([("朋友", "NN")], [("the", "DT"), ("friend", "NN")]),
    ([("你", "PN")], [("you", "PRP")]),
    ([("姑姑", "NN")], [("the", "DT"), ("aunt", "NN")]),
]

VERBS = [
    ([("喜欢", "VV")], [("like", "VBP")]),
    ([("研究", "VV")], [("study", "VBP")]),
    ([("讨论", "VV")], [("discuss", "VBP")]),
    ([("支持", "VV")], [("support", "VBP")]),
    ([("参观", "VV")], [("visit", "VBP")]),
    ([("担心", "VV")], [("worry", "VBP"), ("about", "IN")]),
]

# (zh tokens, en tokens, optional (probability, alternative en tokens))
OBJECTS = [
    ([("高尔夫球", "NN"), ("俱乐部", "NN")], [("the", "DT"), ("golf", "NN"), ("club", "NN")],
     (0.05, [("the", "DT"), ("golf", "NN"), ("course", "NN")])),
    ([("人工", "JJ"), ("智能", "NN")], [("artificial", "JJ"), ("intelligence", "NN")], None),
    ([("机器", "NN"), ("翻译", "NN")], [("machine", "NN"), ("translation", "NN")],
     (0.15, [("automatic", "JJ"), ("translation", "NN")])),
    ([("自然", "JJ"), ("语言", "NN"), ("处理", "NN")],
     [("natural", "JJ"), ("language", "NN"), ("processing", "NN")], None),
    ([("国际", "JJ"), ("机场", "NN")], [("the", "DT"), ("international", "JJ"), ("airport", "NN")], None),
    ([("木头", "NN"), ("橋樑", "NN")], [("the", "DT"), ("wooden", "JJ"), ("bridge", "NN")], None),
    ([("医学", "NN"), ("研究", "NN")], [("medical", "JJ"), ("research", "NN")], None),
    ([("数据", "NN"), ("分析", "NN")], [("data", "NN"), ("analysis", "NN")],
     (0.35, [("data", "NN"), ("analytics", "NNS")])),
    ([("北京", "NR"), ("大学", "NN")], [("peking", "NNP"), ("university", "NNP")], None),
    ([("网球", "NN"), ("比赛", "NN")], [("the", "DT"), ("tennis", "NN"), ("match", "NN")], None),
    ([("高速", "JJ"), ("公路", "NN")], [("the", "DT"), ("highway", "NN")], None),
    ([("这", "DT"), ("本", "M"), ("书", "NN")], [("this", "DT"), ("book", "NN")], None),
    ([("湖", "NN"), ("东", "LC"), ("的", "DEG"), ("房子", "NN")],
     [("the", "DT"), ("house", "NN"), ("east", "RB"), ("of", "IN"), ("the", "DT"), ("lake", "NN")], None),
    ([("病房", "NN")], [("the", "DT"), ("ward", "NN")], None),
    ([("森林", "NN")], [("the", "DT"), ("forest", "NN")], None),
    ([("意见", "NN")], [("the", "DT"), ("opinion", "NN")], None),
    ([("树林", "NN")], [("the", "DT"), ("woods", "NNS")], None),
    ([("江", "NN"), ("沙", "NN")], [("the", "DT"), ("river", "NN"), ("sand", "NN")], None),
    ([("早市", "NN")], [("the", "DT"), ("morning", "NN"), ("market", "NN")], None),
    ([("信封", "NN")], [("the", "DT"), ("envelope", "NN")], None),
    ([("杏", "NN"), ("果汁", "NN")], [("the", "DT"), ("apricot", "NN"), ("juice", "NN")], None),
    ([("春天", "NT")], [("the", "DT"), ("spring", "NN")], None),
    ([("晶体", "NN")], [("the", "DT"), ("crystal", "NN")], None),
    ([("住房", "NN")], [("the", "DT"), ("housing", "NN")], None),
    ([("休息", "NN"), ("时间", "NN")], [("the", "DT"), ("break", "NN"), ("time", "NN")], None),
]

ADVERB = ([("很", "AD")], [("really", "RB")])
PLACES = [
    ([("在", "P"), ("北京", "NR")], [("in", "IN"), ("beijing", "NNP")]),
    ([("在", "P"), ("街", "NN"), ("上", "LC")], [("on", "IN"), ("the", "DT"), ("street", "NN")]),
    ([("在", "P"), ("学校", "NN")], [("at", "IN"), ("school", "NN")]),
]
CONJ = ([("和", "CC")], [("and", "CC")])


def render_object(rng, obj):
    zh, en, alt = obj
    if alt is not None and rng.random() < alt[0]:
        en = alt[1]
    return zh, en


def sentence(rng):
    zh, en = [], []
    s = rng.choice(SUBJECTS)
    zh += s[0]
    en += s[1]
    place = rng.choice(PLACES) if rng.random() < 0.2 else None
    if place:
        zh += place[0]
    if rng.random() < 0.3:
        zh += ADVERB[0]
        en += ADVERB[1]
    v = rng.choice(VERBS)
    zh += v[0]
    en += v[1]
    o_zh, o_en = render_object(rng, rng.choice(OBJECTS))
    zh += o_zh
    en += o_en
    if rng.random() < 0.25:
        o2_zh, o2_en = render_object(rng, rng.choice(OBJECTS))
        zh += CONJ[0] + o2_zh
        en += CONJ[1] + o2_en
    if place:
        en += place[1]
    zh.append(("。", "PU"))
    en.append((".", "."))
    return zh, en


def main(outdir, n):
    rng = random.Random(20221)
    os.makedirs(outdir, exist_ok=True)
    files = {name: open(os.path.join(outdir, name), "w", encoding="utf-8", newline="\n")
             for name in ("zh.seg", "zh.tag", "en.tok", "en.tag")}
    for _ in range(n):
        zh, en = sentence(rng)
        files["zh.seg"].write(" ".join(w for w, _ in zh) + "\n")
        files["zh.tag"].write(" ".join(f"{w}|{t}" for w, t in zh) + "\n")
        files["en.tok"].write(" ".join(w for w, _ in en) + "\n")
        files["en.tag"].write(" ".join(f"{w}|{t}" for w, t in en) + "\n")
    for f in files.values():
        f.close()


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/sample", 10_000)
