#!/usr/bin/env python3
"""Writes data/ids_fixture.txt from the entry table below (codepoints computed)."""
import sys

ENTRIES = [
    ("叕", ["⿱双双", "⿰㕛㕛"]),
    ("㕛", ["⿱又又"]),
    ("双", ["⿰又又"]),
    ("又", ["又"]),
    ("並", ["⿱䒑业", "⿱丷亚"]),
    ("串", ["⿻吕丨", "⿻中口"]),
    ("吕", ["⿱口口"]),
    ("中", ["⿻口丨"]),
    ("橋", ["⿰木喬"]),
    ("樑", ["⿰木梁"]),
    ("喬", ["⿱吞冋"]),
    ("吞", ["⿱天口"]),
    ("冋", ["⿵冂口"]),
    ("天", ["⿱一大"]),
    ("大", ["大"]),
    ("梁", ["⿱㳇木"]),
    ("㳇", ["⿰氵刅"]),
    ("木", ["木"]),
    ("林", ["⿰木木"]),
    ("森", ["⿱木林"]),
    ("好", ["⿰女子"]),
    ("明", ["⿰日月"]),
    ("俱", ["⿰亻具"]),
    ("具", ["⿱⿱目一八"]),
    ("部", ["⿰咅阝"]),
    ("咅", ["⿱立口"]),
    ("球", ["⿰王求"]),
    ("尔", ["⿱⺈小"]),
    ("高", ["⿳亠口冋"]),
    ("夫", ["⿻二人"]),
    ("人", ["人"]),
    ("智", ["⿱知日"]),
    ("知", ["⿰矢口"]),
    ("能", ["⿰⿱厶月⿱匕匕"]),
    ("机", ["⿰木几"]),
    ("器", ["⿳吅犬吅"]),
    ("吅", ["⿰口口"]),
    ("翻", ["⿰番羽"]),
    ("译", ["⿰讠⿱又丰"]),
    ("语", ["⿰讠吾"]),
    ("吾", ["⿱五口"]),
    ("然", ["⿱肰灬"]),
    ("肰", ["⿰⺼犬"]),
    ("处", ["⿺夂卜"]),
    ("理", ["⿰王里"]),
    ("国", ["⿴囗玉"]),
    ("际", ["⿰阝示"]),
    ("场", ["⿰土𠃓"]),
    ("医", ["⿷匚矢"]),
    ("研", ["⿰石开"]),
    ("究", ["⿱穴九"]),
    ("数", ["⿰娄攵"]),
    ("娄", ["⿱米女"]),
    ("据", ["⿰扌居"]),
    ("居", ["⿸尸古"]),
    ("分", ["⿱八刀"]),
    ("析", ["⿰木斤"]),
    ("京", ["⿳亠口小"]),
    ("同", ["⿵冂⿱一口"]),
    ("问", ["⿵门口"]),
    ("比", ["⿰匕匕"]),
    ("赛", ["⿳宀𡗗贝"]),
    ("很", ["⿰彳艮"]),
    ("在", ["⿸𠂇⿱丨土"]),
    ("和", ["⿰禾口"]),
    ("房", ["⿸户方"]),
    ("题", ["⿺是页"]),
    ("是", ["⿱日疋"]),
    ("我", ["⿰手戈"]),
    ("他", ["⿰亻也"]),
    ("她", ["⿰女也"]),
    ("们", ["⿰亻门"]),
    ("老", ["⿱耂匕"]),
    ("师", ["⿰丨帀"]),
    ("学", ["⿳⺍冖子"]),
    ("朋", ["⿰月月"]),
    ("友", ["⿸𠂇又"]),
    ("喜", ["⿱吉⿱䒑口"]),
    ("吉", ["⿱士口"]),
    ("欢", ["⿰又欠"]),
    ("去", ["⿱土厶"]),
    ("看", ["⿱手目"]),
    ("建", ["⿺廴聿"]),
    ("造", ["⿺辶告"]),
    ("告", ["⿱⺧口"]),
    ("这", ["⿺辶文"]),
    ("道", ["⿺辶首"]),
    ("街", ["⿲彳圭亍"]),
    ("圭", ["⿱土土"]),
    ("班", ["⿲王刂王"]),
    ("辦", ["⿲辛力辛"]),
    ("湖", ["⿲氵古月"]),
    ("意", ["⿳立日心"]),
    ("回", ["⿴口口"]),
    ("因", ["⿴囗大"]),
    ("凶", ["⿶凵㐅"]),
    ("画", ["⿱一⿶凵田"]),
    ("区", ["⿷匚㐅"]),
    ("匠", ["⿷匚斤"]),
    ("病", ["⿸疒丙"]),
    ("床", ["⿸广木"]),
    ("式", ["⿹弋工"]),
    ("句", ["⿹勹口"]),
    ("可", ["⿹丁口"]),
    ("東", ["⿻木日"]),
    ("起", ["⿺走己"]),
    ("左", ["⿸𠂇工"]),
    ("右", ["⿸𠂇口"]),
    ("次", ["⿰冫欠"]),
    ("骨", ["⿱⿵冂⿰丨𠃍月[T]", "⿱⿵冂⿰𠃌丨月[G]"]),
    ("令", ["⿱亼龴[JK]", "⿱亼𰆊[GT]", "⿱人⿱一龴"]),
    ("角", ["⿱⺈⿵用丨[GT]", "⿱⺈⿵冂土[J]"]),
    ("網", ["⿰糹罔[HT]", "⿰糸罔"]),
    ("罔", ["⿵冂亡"]),
    ("北", ["⿰⺦匕"]),
    ("头", ["⿻⺀大"]),
    # remaining sample vocabulary
    ("讨", ["⿰讠寸"]),
    ("论", ["⿰讠仑"]),
    ("仑", ["⿱人匕"]),
    ("东", ["东"]),
    ("的", ["⿰白勺"]),
    ("白", ["⿱丿日"]),
    ("勺", ["⿹勹丶"]),
    ("子", ["子"]),
    ("见", ["⿵冂儿"]),
    ("参", ["⿱厶⿱大彡"]),
    ("观", ["⿰又见"]),
    ("工", ["工"]),
    ("本", ["⿻木一"]),
    ("书", ["书"]),
    ("支", ["⿱十又"]),
    ("持", ["⿰扌寺"]),
    ("寺", ["⿱土寸"]),
    ("速", ["⿺辶束"]),
    ("束", ["⿻木口"]),
    ("公", ["⿱八厶"]),
    ("路", ["⿰⻊各"]),
    ("各", ["⿱夂口"]),
    ("上", ["上"]),
    ("生", ["⿱𠂉土"]),
    ("网", ["⿵冂⿰㐅㐅"]),
    ("校", ["⿰木交"]),
    ("交", ["⿱亠父"]),
    ("父", ["⿱八㐅"]),
    ("自", ["⿱丿目"]),
    ("言", ["⿱亠⿱二口"]),
    ("乐", ["乐"]),
    ("你", ["⿰亻尔"]),
    ("姑", ["⿰女古"]),
    ("担", ["⿰扌旦"]),
    ("旦", ["⿱日一"]),
    ("心", ["心"]),
    ("树", ["⿰木对"]),
    ("对", ["⿰又寸"]),
    ("江", ["⿰氵工"]),
    ("沙", ["⿰氵少"]),
    ("少", ["⿱小丿"]),
    ("早", ["⿱日十"]),
    ("市", ["⿱亠巾"]),
    ("信", ["⿰亻言"]),
    ("封", ["⿰圭寸"]),
    ("杏", ["⿱木口"]),
    ("果", ["⿻日木"]),
    ("汁", ["⿰氵十"]),
    ("春", ["⿱𡗗日"]),
    ("晶", ["⿱日⿰日日"]),
    ("体", ["⿰亻本"]),
    ("住", ["⿰亻主"]),
    ("主", ["⿱丶王"]),
    ("休", ["⿰亻木"]),
    ("息", ["⿱自心"]),
    ("时", ["⿰日寸"]),
    ("间", ["⿵门日"]),
    # shared components, decomposed toward primitives
    ("古", ["⿱十口"]),
    ("十", ["⿻一丨"]),
    ("耂", ["⿱土丿"]),
    ("土", ["⿱十一"]),
    ("士", ["⿱十一"]),
    ("帀", ["⿱一巾"]),
    ("巾", ["⿵冂丨"]),
    ("户", ["⿱丶尸"]),
    ("禾", ["⿱丿木"]),
    ("立", ["⿱亠䒑"]),
    ("䒑", ["⿱丷一"]),
    ("亠", ["⿱丶一"]),
    ("石", ["⿸丆口"]),
    ("丆", ["⿱一丿"]),
    ("开", ["⿱一廾"]),
    ("穴", ["⿱宀八"]),
    ("欠", ["⿱⺈人"]),
    ("米", ["⿻丷木"]),
    ("矢", ["⿱𠂉大"]),
    ("文", ["⿱亠㐅"]),
    ("犬", ["⿺大丶"]),
    ("番", ["⿱釆田"]),
    ("釆", ["⿱丿米"]),
    ("羽", ["⿰习习"]),
    ("玉", ["⿻王丶"]),
    ("王", ["⿱一土"]),
    ("示", ["⿱二小"]),
    ("丙", ["⿱一⿵冂人"]),
    ("贝", ["⿵冂人"]),
    ("里", ["⿱日土"]),
]

def check(entries):
    chars = [ch for ch, _ in entries]
    dupes = {c for c in chars if chars.count(c) > 1}
    assert not dupes, "duplicate entries: %s" % "".join(sorted(dupes))
    table = {}
    for ch, variants in entries:
        table[ch] = [c for c in variants[0].split("[")[0] if not 0x2FF0 <= ord(c) <= 0x2FFF and c != ch]
    state = {}

    def visit(c):
        if state.get(c) == 1:
            raise AssertionError("cycle through %s" % c)
        if state.get(c) == 2:
            return
        state[c] = 1
        for p in table.get(c, []):
            visit(p)
        state[c] = 2

    for ch in table:
        visit(ch)


def main(path):
    check(ENTRIES)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(";; IDS fixture dictionary: U+XXXX<TAB>CHAR<TAB>VARIANT(<TAB>VARIANT)*\n")
        f.write("# variants may carry region tags, e.g. EXPR[GT]\n")
        for ch, variants in ENTRIES:
            f.write("U+%04X\t%s\t%s\n" % (ord(ch), ch, "\t".join(variants)))

if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/ids_fixture.txt")
