#!/usr/bin/env python3
# Copyright 2026 The Simile Miner Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates data/lexicon.tsv from compact paradigm tables.

Usage: gen_lexicon.py > data/lexicon.tsv

The first tag assigned to a form wins, so function words are listed first
and ambiguous forms take the earlier category.
"""

import sys

SOFT = ("č", "ć", "š", "ž", "j", "lj", "nj", "đ", "dž", "c")

# Closed-class words that must never act as a simile head or NP part.
FUNCTION_WORDS = """
u na i a ali ili da ne ni je su sam si smo ste bi bio bila bilo bili biti
to taj ta ono ovaj ova ovo onaj ona on oni one mi vi ja ti nas vas ih ga
mu joj im me te sebe svoj svoja svoje moj moja moje tvoj tvoja tvoje njegov
njena njen njihov za od do iz sa s pod nad pred preko kroz bez kod oko prema
po o pri među kada kad gde što šta zašto kako koji koja koje čiji dok jer
ako pa te već još samo baš čak tako vrlo jako mnogo malo sve svi sva sav
neki neka neko nešto nikad uvek često danas sutra juče ovde tamo tu sad
sada li zar eto evo hajde neće nije nisu nisam hoće hoću mogu može treba
""".split()

# Adjectives: (masculine, stem for other forms).
ADJECTIVES = [
    ("lep", "lep"), ("brz", "brz"), ("spor", "spor"), ("crven", "crven"),
    ("crn", "crn"), ("beo", "bel"), ("zelen", "zelen"), ("žut", "žut"),
    ("plav", "plav"), ("siv", "siv"), ("miran", "mirn"), ("ljut", "ljut"),
    ("tvrd", "tvrd"), ("mek", "mek"), ("hladan", "hladn"), ("topao", "topl"),
    ("gladan", "gladn"), ("žedan", "žedn"), ("vredan", "vredn"),
    ("lenj", "lenj"), ("jak", "jak"), ("slab", "slab"), ("star", "star"),
    ("mlad", "mlad"), ("nov", "nov"), ("velik", "velik"), ("mali", "mal"),
    ("visok", "visok"), ("nizak", "nisk"), ("debeo", "debel"),
    ("mršav", "mršav"), ("tih", "tih"), ("glasan", "glasn"),
    ("pametan", "pametn"), ("glup", "glup"), ("lud", "lud"),
    ("pijan", "pijan"), ("trezan", "trezn"), ("čist", "čist"),
    ("prljav", "prljav"), ("suv", "suv"), ("mokar", "mokr"),
    ("gladak", "glatk"), ("oštar", "oštr"), ("tup", "tup"), ("slep", "slep"),
    ("gluv", "gluv"), ("nem", "nem"), ("bled", "bled"), ("smoren", "smoren"),
    ("umoran", "umorn"), ("srećan", "srećn"), ("tužan", "tužn"),
    ("veseo", "vesel"), ("hrabar", "hrabr"), ("plašljiv", "plašljiv"),
    ("dobar", "dobr"), ("loš", "loš"), ("zao", "zl"), ("ružan", "ružn"),
    ("zdrav", "zdrav"), ("bolestan", "bolesn"), ("bogat", "bogat"),
    ("siromašan", "siromašn"), ("gord", "gord"), ("ponosan", "ponosn"),
    ("lukav", "lukav"), ("mudar", "mudr"), ("naivan", "naivn"),
    ("nevin", "nevin"), ("tvrdoglav", "tvrdoglav"), ("uporan", "uporn"),
    ("spretan", "spretn"), ("nespretan", "nespretn"), ("gibak", "gipk"),
    ("krut", "krut"), ("lak", "lak"), ("težak", "tešk"), ("sladak", "slatk"),
    ("gorak", "gork"), ("kiseo", "kisel"), ("slan", "slan"), ("ljut", "ljut"),
    ("vruć", "vruć"), ("leden", "leden"), ("mračan", "mračn"),
    ("svetao", "svetl"), ("taman", "tamn"), ("bistar", "bistr"),
    ("mutan", "mutn"), ("prazan", "prazn"), ("pun", "pun"), ("dug", "dug"),
    ("kratak", "kratk"), ("širok", "širok"), ("uzak", "usk"),
    ("dubok", "dubok"), ("plitak", "plitk"), ("okrugao", "okrugl"),
    ("ravan", "ravn"), ("kriv", "kriv"), ("prav", "prav"),
    ("pravi", "prav"), ("stari", "star"), ("veliki", "velik"),
    ("zaljubljen", "zaljubljen"), ("izgubljen", "izgubljen"),
    ("pokisao", "pokisl"), ("skamenjen", "skamenjen"), ("oparen", "oparen"),
    ("nakostrešen", "nakostrešen"), ("crvenkast", "crvenkast"),
    ("sjajan", "sjajn"), ("blag", "blag"), ("strog", "strog"),
    ("grub", "grub"), ("nežan", "nežn"), ("ponizan", "ponizn"),
    ("vitak", "vitk"), ("krupan", "krupn"), ("sitan", "sitn"),
    ("žilav", "žilav"), ("čvrst", "čvrst"), ("postojan", "postojan"),
    ("vatrogasni", "vatrogasn"), ("poljski", "poljsk"), ("šumski", "šumsk"),
    ("divlji", "divlj"), ("domaći", "domać"), ("morski", "morsk"),
    ("oderan", "oderan"), ("ranjen", "ranjen"), ("gladni", "gladn"),
    ("crni", "crn"),
]

# Nouns: (nominative, stem, gender m/f/n).
NOUNS = [
    ("konj", "konj", "m"), ("vuk", "vuk", "m"), ("kurjak", "kurjak", "m"),
    ("sneg", "sneg", "m"), ("cvet", "cvet", "m"), ("med", "med", "m"),
    ("kamen", "kamen", "m"), ("zec", "zec", "m"), ("ris", "ris", "m"),
    ("mrav", "mrav", "m"), ("lav", "lav", "m"), ("pas", "ps", "m"),
    ("zmaj", "zmaj", "m"), ("led", "led", "m"), ("krastavac", "krastavc", "m"),
    ("bik", "bik", "m"), ("medved", "medved", "m"), ("puž", "puž", "m"),
    ("slavuj", "slavuj", "m"), ("bubreg", "bubreg", "m"), ("vampir", "vampir", "m"),
    ("miš", "miš", "m"), ("soko", "sokol", "m"), ("orao", "orl", "m"),
    ("golub", "golub", "m"), ("paun", "paun", "m"), ("jelen", "jelen", "m"),
    ("majmun", "majmun", "m"), ("magarac", "magarc", "m"), ("jarac", "jarc", "m"),
    ("ovan", "ovn", "m"), ("petao", "petl", "m"), ("crv", "crv", "m"),
    ("hrast", "hrast", "m"), ("bor", "bor", "m"), ("list", "list", "m"),
    ("dan", "dan", "m"), ("grom", "grom", "m"), ("vetar", "vetr", "m"),
    ("oblak", "oblak", "m"), ("mesec", "mesec", "m"), ("duh", "duh", "m"),
    ("đavo", "đavol", "m"), ("anđeo", "anđel", "m"), ("car", "car", "m"),
    ("kralj", "kralj", "m"), ("prosjak", "prosjak", "m"), ("luđak", "luđak", "m"),
    ("top", "top", "m"), ("metak", "metk", "m"), ("sir", "sir", "m"),
    ("šećer", "šećer", "m"), ("limun", "limun", "m"), ("papir", "papir", "m"),
    ("zid", "zid", "m"), ("panj", "panj", "m"), ("balvan", "balvan", "m"),
    ("čovek", "čovek", "m"), ("brat", "brat", "m"), ("otac", "oc", "m"),
    ("pravnik", "pravnik", "m"), ("lekar", "lekar", "m"), ("učitelj", "učitelj", "m"),
    ("profesor", "profesor", "m"), ("inženjer", "inženjer", "m"),
    ("konobar", "konobar", "m"), ("vozač", "vozač", "m"), ("sudija", "sudij", "f"),
    ("direktor", "direktor", "m"), ("student", "student", "m"),
    ("novinar", "novinar", "m"), ("glumac", "glumc", "m"), ("trener", "trener", "m"),
    ("pisac", "pisc", "m"), ("kuvar", "kuvar", "m"), ("zidar", "zidar", "m"),
    ("čuvar", "čuvar", "m"), ("radnik", "radnik", "m"), ("menadžer", "menadžer", "m"),
    ("volonter", "volonter", "m"), ("savetnik", "savetnik", "m"),
    ("tehničar", "tehničar", "m"), ("službenik", "službenik", "m"),
    ("vojnik", "vojnik", "m"), ("seljak", "seljak", "m"), ("gost", "gost", "m"),
    ("domaćin", "domaćin", "m"), ("sat", "sat", "m"), ("grad", "grad", "m"),
    ("posao", "posl", "m"), ("ovca", "ovc", "f"), ("krava", "krav", "f"),
    ("koza", "koz", "f"), ("mačka", "mačk", "f"), ("riba", "rib", "f"),
    ("zmija", "zmij", "f"), ("pčela", "pčel", "f"), ("muva", "muv", "f"),
    ("žaba", "žab", "f"), ("lisica", "lisic", "f"), ("sova", "sov", "f"),
    ("kokoška", "kokošk", "f"), ("guska", "gusk", "f"), ("svinja", "svinj", "f"),
    ("vatra", "vatr", "f"), ("voda", "vod", "f"), ("zemlja", "zemlj", "f"),
    ("stena", "sten", "f"), ("ruža", "ruž", "f"), ("trava", "trav", "f"),
    ("krv", "krv", "f"), ("so", "sol", "f"), ("smrt", "smrt", "f"),
    ("noć", "noć", "f"), ("jagoda", "jagod", "f"), ("trešnja", "trešnj", "f"),
    ("kuća", "kuć", "f"), ("stanica", "stanic", "f"), ("ulica", "ulic", "f"),
    ("crkva", "crkv", "f"), ("sveća", "sveć", "f"), ("lutka", "lutk", "f"),
    ("kraljica", "kraljic", "f"), ("devojka", "devojk", "f"), ("žena", "žen", "f"),
    ("majka", "majk", "f"), ("sestra", "sestr", "f"), ("učiteljica", "učiteljic", "f"),
    ("ruka", "ruk", "f"), ("glava", "glav", "f"), ("kiša", "kiš", "f"),
    ("pero", "per", "n"), ("mleko", "mlek", "n"), ("sunce", "sunc", "n"),
    ("nebo", "neb", "n"), ("more", "mor", "n"), ("zlato", "zlat", "n"),
    ("srebro", "srebr", "n"), ("gvožđe", "gvožđ", "n"), ("drvo", "drv", "n"),
    ("jaje", "jaj", "n"), ("dete", "detet", "n"), ("tele", "telet", "n"),
    ("jagnje", "jagnjet", "n"), ("prase", "praset", "n"), ("pile", "pilet", "n"),
    ("govedo", "goved", "n"), ("goveče", "govečet", "n"), ("ogledalo", "ogledal", "n"),
    ("platno", "platn", "n"), ("brdo", "brd", "n"), ("jezero", "jezer", "n"),
    ("pakao", "pakl", "m"), ("vino", "vin", "n"), ("ulje", "ulj", "n"),
]

# Verbs: (infinitive, present stem, present vowel, past stem).
VERBS = [
    ("raditi", "rad", "i", "radi"), ("spavati", "spav", "a", "spava"),
    ("trčati", "trč", "i", "trča"), ("jesti", "jed", "e", "je"),
    ("piti", "pij", "e", "pi"), ("plivati", "pliv", "a", "pliva"),
    ("pevati", "pev", "a", "peva"), ("plakati", "plač", "e", "plaka"),
    ("smejati", "smej", "e", "smeja"), ("skakati", "skač", "e", "skaka"),
    ("leteti", "let", "i", "lete"), ("drhtati", "dršć", "e", "drhta"),
    ("ćutati", "ćut", "i", "ćuta"), ("vikati", "vič", "e", "vika"),
    ("govoriti", "govor", "i", "govori"), ("pričati", "prič", "a", "priča"),
    ("gledati", "gled", "a", "gleda"), ("izgledati", "izgled", "a", "izgleda"),
    ("živeti", "živ", "i", "žive"), ("stajati", "stoj", "i", "staja"),
    ("sedeti", "sed", "i", "sede"), ("ležati", "lež", "i", "leža"),
    ("hodati", "hod", "a", "hoda"), ("ići", "id", "e", "iš"),
    ("rasti", "rast", "e", "ras"), ("goreti", "gor", "i", "gore"),
    ("sijati", "sij", "a", "sija"), ("mirisati", "miriš", "e", "mirisa"),
    ("smrdeti", "smrd", "i", "smrde"), ("urlati", "url", "a", "urla"),
    ("lajati", "laj", "e", "laja"), ("kukati", "kuk", "a", "kuka"),
    ("cvileti", "cvil", "i", "cvile"), ("znojiti", "znoj", "i", "znoji"),
    ("tresti", "tres", "e", "tres"), ("puzati", "puz", "i", "puza"),
    ("kliziti", "kliz", "i", "klizi"), ("vući", "vuč", "e", "vuk"),
    ("nositi", "nos", "i", "nosi"), ("čuvati", "čuv", "a", "čuva"),
    ("voleti", "vol", "i", "vole"), ("mrzeti", "mrz", "i", "mrze"),
    ("boriti", "bor", "i", "bori"), ("bežati", "bež", "i", "beža"),
    ("čekati", "ček", "a", "čeka"), ("misliti", "misl", "i", "misli"),
    ("znati", "zn", "a", "zna"), ("ponašati", "ponaš", "a", "ponaša"),
    ("osećati", "oseć", "a", "oseća"), ("derati", "der", "e", "dera"),
    ("udarati", "udar", "a", "udara"), ("ubijati", "ubij", "a", "ubija"),
    ("svetleti", "svetl", "i", "svetle"), ("blistati", "blist", "a", "blista"),
    ("crveneti", "crven", "i", "crvene"), ("bledeti", "bled", "i", "blede"),
    ("topiti", "top", "i", "topi"), ("mrznuti", "mrzn", "e", "mrznu"),
    ("tonuti", "ton", "e", "tonu"), ("pucati", "puc", "a", "puca"),
    ("zvučati", "zvuč", "i", "zvuča"), ("slušati", "sluš", "a", "sluša"),
]


def adjective_forms(masc, stem):
    neuter = "e" if stem.endswith(SOFT) else "o"
    yield masc
    for ending in ("a", neuter, "i", "e", "og", "oj", "om", "im", "ih", "u",
                   "oga", "ome"):
        yield stem + ending


def noun_forms(nom, stem, gender):
    yield nom
    if gender == "m":
        endings = ("a", "u", "om", "em", "i", "e", "ima", "ovi", "ove")
    elif gender == "f":
        endings = ("a", "e", "i", "u", "om", "ama")
    else:
        endings = ("a", "u", "om", "ima", "ima")
    for e in endings:
        yield stem + e


def verb_forms(inf, pres, vowel, past):
    yield inf
    if vowel == "a":
        present = ("am", "aš", "a", "amo", "ate", "aju")
    elif vowel == "i":
        present = ("im", "iš", "i", "imo", "ite", "e")
    else:
        present = ("em", "eš", "e", "emo", "ete", "u")
    for e in present:
        yield pres + e
    if past.endswith(("a", "e", "i", "u")):
        yield past + "o"
    for e in ("la", "lo", "li", "le"):
        yield past + e


def main():
    seen = {}
    order = []

    def add(form, tag):
        if form not in seen:
            seen[form] = tag
            order.append(form)

    for w in FUNCTION_WORDS:
        add(w, "O")
    for args in VERBS:
        for f in verb_forms(*args):
            add(f, "V")
    for args in ADJECTIVES:
        for f in adjective_forms(*args):
            add(f, "A")
    for args in NOUNS:
        for f in noun_forms(*args):
            add(f, "N")

    out = sys.stdout
    out.write("# Starter lexicon: form<TAB>tag (V, A, N, O).\n")
    out.write("# Generated by tools/gen_lexicon.py.\n")
    for form in order:
        out.write(f"{form}\t{seen[form]}\n")


if __name__ == "__main__":
    main()
