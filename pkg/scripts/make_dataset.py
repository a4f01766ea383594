#!/usr/bin/env python3
"""Regenerate the shipped incident evaluation datasets (en + nl).

Writes src/guibridge/evalkit/data/incidents_{en,nl}.jsonl from the scenario
table below. The two sets are direct translations of each other; the Dutch
cases use Dutch tool schemas, mirroring how a localized deployment would
expose its screens. Run from the repo root:

    python3 scripts/make_dataset.py
"""

import json
from pathlib import Path

OUT_DIR = Path(__file__).resolve().parent.parent / "src" / "guibridge" / "evalkit" / "data"


TOOLS_EN = [
    {
        "name": "record_incident",
        "description": "Record a new incident observed in the data center",
        "parameters": [
            {"name": "fire_height_m", "description": "Height of the fire in meters", "type": "number"},
            {"name": "fire_material_type", "description": "Material that is burning",
             "enum": ["battery", "cable", "server_rack", "cooling_unit", "generator"]},
            {"name": "location", "description": "Room, row, or rack where the incident happened", "type": "string"},
            {"name": "severity", "description": "How severe the incident is",
             "enum": ["low", "medium", "high", "critical"]},
            {"name": "smoke_detected", "description": "Whether smoke is visible", "type": "boolean"},
            {"name": "injuries", "description": "Number of people injured", "type": "integer"},
        ],
    },
    {
        "name": "report_water_leak",
        "description": "Report water leaking into the data center",
        "parameters": [
            {"name": "location", "description": "Room, row, or rack where the water was seen", "type": "string"},
            {"name": "severity", "description": "How severe the leak is",
             "enum": ["low", "medium", "high", "critical"]},
            {"name": "affected_racks", "description": "Number of racks exposed to the water", "type": "integer"},
            {"name": "source", "description": "Where the water is coming from",
             "enum": ["cooling", "roof", "piping", "unknown"]},
            {"name": "contained", "description": "Whether the leak has been contained", "type": "boolean"},
        ],
    },
    {
        "name": "report_power_outage",
        "description": "Report a power outage in part of the data center",
        "parameters": [
            {"name": "zone", "description": "Power zone or room that lost power", "type": "string"},
            {"name": "duration_minutes", "description": "How long the power has been out, in minutes", "type": "integer"},
            {"name": "ups_active", "description": "Whether the UPS took over", "type": "boolean"},
            {"name": "cause", "description": "Suspected cause of the outage",
             "enum": ["grid", "generator", "breaker", "unknown"]},
            {"name": "affected_rows", "description": "Rack rows affected by the outage", "type": "string"},
        ],
    },
    {
        "name": "search_incidents",
        "description": "Search previously recorded incidents",
        "parameters": [
            {"name": "status", "description": "Restrict the search to incidents with this status",
             "enum": ["open", "resolved", "all"]},
            {"name": "incident_type", "description": "Restrict the search to this kind of incident",
             "enum": ["fire", "water", "power", "access"]},
            {"name": "since", "description": "Only incidents after this date or period", "type": "string"},
        ],
    },
    {
        "name": "update_incident",
        "description": "Update an incident record with new information",
        "parameters": [
            {"name": "incident_id", "description": "Identifier of the incident to update", "type": "string"},
            {"name": "status", "description": "New status for the incident",
             "enum": ["open", "investigating", "resolved"]},
            {"name": "note", "description": "Free-text note to append to the record", "type": "string"},
        ],
    },
    {
        "name": "log_access",
        "description": "Log a visitor entering the data center floor",
        "parameters": [
            {"name": "visitor_name", "description": "Full name of the visitor", "type": "string"},
            {"name": "badge_id", "description": "Badge number handed to the visitor", "type": "string"},
            {"name": "purpose", "description": "Reason for the visit", "type": "string"},
        ],
    },
]

TOOLS_NL = [
    {
        "name": "incident_vastleggen",
        "description": "Leg een nieuw incident vast dat in het datacenter is waargenomen",
        "parameters": [
            {"name": "vuurhoogte_m", "description": "Hoogte van het vuur in meters", "type": "number"},
            {"name": "brandend_materiaal", "description": "Materiaal dat brandt",
             "enum": ["batterij", "kabel", "serverkast", "koelunit", "generator"]},
            {"name": "locatie", "description": "Zaal, rij of rack waar het incident plaatsvond", "type": "string"},
            {"name": "ernst", "description": "Hoe ernstig het incident is",
             "enum": ["laag", "middel", "hoog", "kritiek"]},
            {"name": "rook_zichtbaar", "description": "Of er rook zichtbaar is", "type": "boolean"},
            {"name": "gewonden", "description": "Aantal gewonde personen", "type": "integer"},
        ],
    },
    {
        "name": "waterlek_melden",
        "description": "Meld water dat het datacenter binnendringt",
        "parameters": [
            {"name": "locatie", "description": "Zaal, rij of rack waar het water is gezien", "type": "string"},
            {"name": "ernst", "description": "Hoe ernstig het lek is",
             "enum": ["laag", "middel", "hoog", "kritiek"]},
            {"name": "getroffen_racks", "description": "Aantal racks dat aan het water is blootgesteld", "type": "integer"},
            {"name": "bron", "description": "Waar het water vandaan komt",
             "enum": ["koeling", "dak", "leidingwerk", "onbekend"]},
            {"name": "ingedamd", "description": "Of het lek is ingedamd", "type": "boolean"},
        ],
    },
    {
        "name": "stroomuitval_melden",
        "description": "Meld een stroomstoring in een deel van het datacenter",
        "parameters": [
            {"name": "zone", "description": "Stroomzone of zaal zonder stroom", "type": "string"},
            {"name": "duur_minuten", "description": "Hoe lang de stroom al uit is, in minuten", "type": "integer"},
            {"name": "ups_actief", "description": "Of de UPS het heeft overgenomen", "type": "boolean"},
            {"name": "oorzaak", "description": "Vermoedelijke oorzaak van de storing",
             "enum": ["net", "generator", "zekering", "onbekend"]},
            {"name": "getroffen_rijen", "description": "Rackrijen die door de storing zijn getroffen", "type": "string"},
        ],
    },
    {
        "name": "incidenten_zoeken",
        "description": "Zoek eerder vastgelegde incidenten",
        "parameters": [
            {"name": "status", "description": "Beperk de zoekopdracht tot incidenten met deze status",
             "enum": ["open", "opgelost", "alle"]},
            {"name": "incident_type", "description": "Beperk de zoekopdracht tot dit soort incident",
             "enum": ["brand", "water", "stroom", "toegang"]},
            {"name": "sinds", "description": "Alleen incidenten na deze datum of periode", "type": "string"},
        ],
    },
    {
        "name": "incident_bijwerken",
        "description": "Werk een incidentrecord bij met nieuwe informatie",
        "parameters": [
            {"name": "incident_id", "description": "Nummer van het incident dat bijgewerkt moet worden", "type": "string"},
            {"name": "status", "description": "Nieuwe status voor het incident",
             "enum": ["open", "in_onderzoek", "opgelost"]},
            {"name": "notitie", "description": "Vrije notitie om aan het record toe te voegen", "type": "string"},
        ],
    },
    {
        "name": "toegang_registreren",
        "description": "Registreer een bezoeker die de datacentervloer betreedt",
        "parameters": [
            {"name": "bezoeker_naam", "description": "Volledige naam van de bezoeker", "type": "string"},
            {"name": "badge_id", "description": "Badgenummer dat de bezoeker heeft gekregen", "type": "string"},
            {"name": "doel", "description": "Reden van het bezoek", "type": "string"},
        ],
    },
]

SYNONYMS_EN = {
    "record_incident": {
        "battery": ["power cell", "power pack", "accumulator"],
        "server_rack": ["rack", "server cabinet"],
        "cooling_unit": ["air conditioner", "ac unit", "crac"],
    },
    "report_water_leak": {
        "cooling": ["chiller", "cooling loop"],
        "piping": ["pipe", "plumbing"],
    },
}

SYNONYMS_NL = {
    "incident_vastleggen": {
        "batterij": ["accu", "powerbank", "power cell"],
        "serverkast": ["rack", "serverrek"],
        "koelunit": ["airco", "koelinstallatie"],
    },
    "waterlek_melden": {
        "koeling": ["chiller", "koelcircuit"],
        "leidingwerk": ["leiding", "waterleiding"],
    },
}

TOOL_NAME_NL = {
    "record_incident": "incident_vastleggen",
    "report_water_leak": "waterlek_melden",
    "report_power_outage": "stroomuitval_melden",
    "search_incidents": "incidenten_zoeken",
    "update_incident": "incident_bijwerken",
    "log_access": "toegang_registreren",
}


def rng(lo, hi):
    return {"kind": "numeric_range", "lo": lo, "hi": hi}


# Each scenario: tool (en name), then per language the utterance, ideal
# arguments, and any extra matchers (numeric ranges). The sets mirror the
# interaction patterns of a speech-driven GUI: mostly optional parameters,
# enum-heavy tools, self-corrections, and transcription slips.
SCENARIOS = [
    # --- record_incident -------------------------------------------------------
    {
        "tool": "record_incident",
        "en": ("There is a fire in rack 12, flames about halfway up the rack, it is a battery that is burning.",
               {"fire_height_m": 1.0, "fire_material_type": "battery", "location": "rack 12"},
               {"fire_height_m": rng(0.5, 1.5)}),
        "nl": ("Er is brand in rack 12, de vlammen komen tot ongeveer halverwege het rack, er brandt een batterij.",
               {"vuurhoogte_m": 1.0, "brandend_materiaal": "batterij", "locatie": "rack 12"},
               {"vuurhoogte_m": rng(0.5, 1.5)}),
    },
    {
        "tool": "record_incident",
        "en": ("Smoke is coming from a server rack in room B3, no flames yet.",
               {"fire_material_type": "server_rack", "location": "room B3", "smoke_detected": True}, {}),
        "nl": ("Er komt rook uit een serverkast in zaal B3, nog geen vlammen.",
               {"brandend_materiaal": "serverkast", "locatie": "zaal B3", "rook_zichtbaar": True}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("A power cell caught fire on row 7, severity high.",
               {"fire_material_type": "battery", "location": "row 7", "severity": "high"}, {}),
        "nl": ("Een accu heeft vlamgevat in rij 7, ernst hoog.",
               {"brandend_materiaal": "batterij", "locatie": "rij 7", "ernst": "hoog"}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Cable fire under the floor of the main corridor, this is critical, two people are hurt.",
               {"fire_material_type": "cable", "location": "main corridor", "severity": "critical", "injuries": 2}, {}),
        "nl": ("Kabelbrand onder de vloer van de hoofdgang, dit is kritiek, twee mensen zijn gewond.",
               {"brandend_materiaal": "kabel", "locatie": "hoofdgang", "ernst": "kritiek", "gewonden": 2}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Log a fire, about two meters high, it is a generator burning outside zone C.",
               {"fire_height_m": 2.0, "fire_material_type": "generator", "location": "zone C"},
               {"fire_height_m": rng(1.5, 2.5)}),
        "nl": ("Leg een brand vast, ongeveer twee meter hoog, er brandt een generator buiten zone C.",
               {"vuurhoogte_m": 2.0, "brandend_materiaal": "generator", "locatie": "zone C"},
               {"vuurhoogte_m": rng(1.5, 2.5)}),
    },
    {
        "tool": "record_incident",
        "en": ("Fire! The cooling unit on the roof! Flames one meter... no wait, two meters high!",
               {"fire_material_type": "cooling_unit", "location": "roof", "fire_height_m": 2.0},
               {"fire_height_m": rng(1.5, 2.5)}),
        "nl": ("Brand! De koelunit op het dak! Vlammen van een meter... nee wacht, twee meter hoog!",
               {"brandend_materiaal": "koelunit", "locatie": "dak", "vuurhoogte_m": 2.0},
               {"vuurhoogte_m": rng(1.5, 2.5)}),
    },
    {
        "tool": "record_incident",
        "en": ("Small battery fire in the storage room, severity low, no smoke.",
               {"fire_material_type": "battery", "location": "storage room", "severity": "low",
                "smoke_detected": False}, {}),
        "nl": ("Klein batterijbrandje in de opslagruimte, ernst laag, geen rook.",
               {"brandend_materiaal": "batterij", "locatie": "opslagruimte", "ernst": "laag",
                "rook_zichtbaar": False}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("We have an incident: burning cables in row twelve, heavy smoke, make it severity high.",
               {"fire_material_type": "cable", "location": "row 12", "smoke_detected": True,
                "severity": "high"}, {}),
        "nl": ("We hebben een incident: brandende kabels in rij twaalf, veel rook, zet de ernst op hoog.",
               {"brandend_materiaal": "kabel", "locatie": "rij 12", "rook_zichtbaar": True,
                "ernst": "hoog"}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Open the incident form.", {}, {}),
        "nl": ("Open het incidentformulier.", {}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("I need to report a fire.", {}, {}),
        "nl": ("Ik moet een brand melden.", {}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Someone got injured by the server rack fire in hall 2, one casualty, flames at knee height.",
               {"fire_material_type": "server_rack", "location": "hall 2", "injuries": 1,
                "fire_height_m": 0.5},
               {"fire_height_m": rng(0.2, 0.8)}),
        "nl": ("Iemand is gewond geraakt bij de serverkastbrand in zaal 2, een gewonde, vlammen op kniehoogte.",
               {"brandend_materiaal": "serverkast", "locatie": "zaal 2", "gewonden": 1,
                "vuurhoogte_m": 0.5},
               {"vuurhoogte_m": rng(0.2, 0.8)}),
    },
    {
        "tool": "record_incident",
        "en": ("Battery fire at rack 40, nobody got hurt.",
               {"fire_material_type": "battery", "location": "rack 40", "injuries": 0}, {}),
        "nl": ("Batterijbrand bij rack 40, niemand raakte gewond.",
               {"brandend_materiaal": "batterij", "locatie": "rack 40", "gewonden": 0}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("The generator in the basement is on fire, flames as tall as a person.",
               {"fire_material_type": "generator", "location": "basement", "fire_height_m": 1.8},
               {"fire_height_m": rng(1.4, 2.2)}),
        "nl": ("De generator in de kelder staat in brand, vlammen zo hoog als een mens.",
               {"brandend_materiaal": "generator", "locatie": "kelder", "vuurhoogte_m": 1.8},
               {"vuurhoogte_m": rng(1.4, 2.2)}),
    },
    {
        "tool": "record_incident",
        "en": ("Fire in the east wing, cannot see what is burning, visibility is bad because of smoke. Critical!",
               {"location": "east wing", "smoke_detected": True, "severity": "critical"}, {}),
        "nl": ("Brand in de oostvleugel, niet te zien wat er brandt, slecht zicht door de rook. Kritiek!",
               {"locatie": "oostvleugel", "rook_zichtbaar": True, "ernst": "kritiek"}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Correction on what I just said: the burning material is a cooling unit, not a cable.",
               {"fire_material_type": "cooling_unit"}, {}),
        "nl": ("Correctie op wat ik net zei: het brandende materiaal is een koelunit, geen kabel.",
               {"brandend_materiaal": "koelunit"}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("A rack is burning in aisle 3... sorry, aisle 5.",
               {"fire_material_type": "server_rack", "location": "aisle 5"}, {}),
        "nl": ("Er brandt een rack in gangpad 3... sorry, gangpad 5.",
               {"brandend_materiaal": "serverkast", "locatie": "gangpad 5"}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("Record a medium severity fire, a power pack burning at the loading dock, three people injured.",
               {"severity": "medium", "fire_material_type": "battery", "location": "loading dock",
                "injuries": 3}, {}),
        "nl": ("Leg een brand van ernst middel vast, een powerbank die brandt bij het laadperron, drie gewonden.",
               {"ernst": "middel", "brandend_materiaal": "batterij", "locatie": "laadperron",
                "gewonden": 3}, {}),
    },
    {
        "tool": "record_incident",
        "en": ("There is a fire at wreck 14, I mean rack 14, about half a meter high.",
               {"location": "rack 14", "fire_height_m": 0.5},
               {"fire_height_m": rng(0.3, 0.7)}),
        "nl": ("Er is brand bij wrak 14, ik bedoel rack 14, ongeveer een halve meter hoog.",
               {"locatie": "rack 14", "vuurhoogte_m": 0.5},
               {"vuurhoogte_m": rng(0.3, 0.7)}),
    },
    # --- report_water_leak ------------------------------------------------------
    {
        "tool": "report_water_leak",
        "en": ("Water is dripping from the ceiling in room A1.",
               {"location": "room A1", "source": "roof"}, {}),
        "nl": ("Er druppelt water uit het plafond in zaal A1.",
               {"locatie": "zaal A1", "bron": "dak"}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("We have a leak from the cooling loop near row 2, four racks are wet.",
               {"source": "cooling", "location": "row 2", "affected_racks": 4}, {}),
        "nl": ("We hebben een lek in het koelcircuit bij rij 2, vier racks zijn nat.",
               {"bron": "koeling", "locatie": "rij 2", "getroffen_racks": 4}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("Report a water leak, severity high, the water is coming from the piping.",
               {"severity": "high", "source": "piping"}, {}),
        "nl": ("Meld een waterlek, ernst hoog, het water komt uit het leidingwerk.",
               {"ernst": "hoog", "bron": "leidingwerk"}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("There is water on the floor in hall 3, source unknown, but we contained it.",
               {"location": "hall 3", "source": "unknown", "contained": True}, {}),
        "nl": ("Er staat water op de vloer in zaal 3, bron onbekend, maar we hebben het ingedamd.",
               {"locatie": "zaal 3", "bron": "onbekend", "ingedamd": True}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("Major leak! The chiller burst in the cooling plant, at least ten racks affected, not contained!",
               {"source": "cooling", "location": "cooling plant", "affected_racks": 10,
                "contained": False}, {}),
        "nl": ("Groot lek! De chiller is gesprongen in de koelruimte, minstens tien racks getroffen, niet ingedamd!",
               {"bron": "koeling", "locatie": "koelruimte", "getroffen_racks": 10,
                "ingedamd": False}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("Small leak under rack 9, just the one rack, low severity.",
               {"location": "rack 9", "affected_racks": 1, "severity": "low"}, {}),
        "nl": ("Klein lek onder rack 9, alleen dat ene rack, ernst laag.",
               {"locatie": "rack 9", "getroffen_racks": 1, "ernst": "laag"}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("Water leak in the basement... make that severity critical, twelve racks.",
               {"location": "basement", "severity": "critical", "affected_racks": 12}, {}),
        "nl": ("Waterlek in de kelder... maak er maar ernst kritiek van, twaalf racks.",
               {"locatie": "kelder", "ernst": "kritiek", "getroffen_racks": 12}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("The plumbing in the north corridor is leaking again.",
               {"source": "piping", "location": "north corridor"}, {}),
        "nl": ("De waterleiding in de noordgang lekt alweer.",
               {"bron": "leidingwerk", "locatie": "noordgang"}, {}),
    },
    {
        "tool": "report_water_leak",
        "en": ("Open the water leak form.", {}, {}),
        "nl": ("Open het waterlekformulier.", {}, {}),
    },
    # --- report_power_outage -----------------------------------------------------
    {
        "tool": "report_power_outage",
        "en": ("Power is out in zone B, the UPS kicked in.",
               {"zone": "zone B", "ups_active": True}, {}),
        "nl": ("De stroom is uitgevallen in zone B, de UPS heeft het overgenomen.",
               {"zone": "zone B", "ups_actief": True}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("We lost power on rows 4 to 6 about twenty minutes ago.",
               {"affected_rows": "4-6", "duration_minutes": 20}, {}),
        "nl": ("We zijn ongeveer twintig minuten geleden de stroom kwijtgeraakt op rij 4 tot 6.",
               {"getroffen_rijen": "4-6", "duur_minuten": 20}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("Outage in the main hall, looks like a breaker tripped.",
               {"zone": "main hall", "cause": "breaker"}, {}),
        "nl": ("Storing in de grote zaal, het lijkt erop dat een zekering is gesprongen.",
               {"zone": "grote zaal", "oorzaak": "zekering"}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("Grid failure, the whole building was dark for five minutes, the UPS did not come up!",
               {"cause": "grid", "duration_minutes": 5, "ups_active": False}, {}),
        "nl": ("Netstoring, het hele gebouw zat vijf minuten zonder licht, de UPS kwam niet op!",
               {"oorzaak": "net", "duur_minuten": 5, "ups_actief": False}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("Report a power outage in zone F... correction, zone E.",
               {"zone": "zone E"}, {}),
        "nl": ("Meld een stroomstoring in zone F... correctie, zone E.",
               {"zone": "zone E"}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("The generator failed during the test, zone A was without power for fifteen minutes.",
               {"cause": "generator", "zone": "zone A", "duration_minutes": 15}, {}),
        "nl": ("De generator viel uit tijdens de test, zone A zat vijftien minuten zonder stroom.",
               {"oorzaak": "generator", "zone": "zone A", "duur_minuten": 15}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("No clue why, but rows 1 and 2 lost power, UPS is active.",
               {"cause": "unknown", "affected_rows": "1 and 2", "ups_active": True}, {}),
        "nl": ("Geen idee waarom, maar rij 1 en 2 zijn zonder stroom, de UPS is actief.",
               {"oorzaak": "onbekend", "getroffen_rijen": "1 en 2", "ups_actief": True}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("Power outage, cause of the problem unknown.",
               {"cause": "unknown"}, {}),
        "nl": ("Stroomstoring, oorzaak van het probleem onbekend.",
               {"oorzaak": "onbekend"}, {}),
    },
    {
        "tool": "report_power_outage",
        "en": ("Power blinked in zone C for two minutes, breaker suspected, rows 7 to 9 affected, UPS active.",
               {"zone": "zone C", "duration_minutes": 2, "cause": "breaker",
                "affected_rows": "7-9", "ups_active": True}, {}),
        "nl": ("De stroom viel twee minuten weg in zone C, vermoedelijk een zekering, rij 7 tot 9 getroffen, UPS actief.",
               {"zone": "zone C", "duur_minuten": 2, "oorzaak": "zekering",
                "getroffen_rijen": "7-9", "ups_actief": True}, {}),
    },
    # --- search_incidents ----------------------------------------------------------
    {
        "tool": "search_incidents",
        "en": ("Show me all open incidents.", {"status": "open"}, {}),
        "nl": ("Laat alle openstaande incidenten zien.", {"status": "open"}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("Any fire incidents since Monday?",
               {"incident_type": "fire", "since": "Monday"}, {}),
        "nl": ("Zijn er brandincidenten sinds maandag?",
               {"incident_type": "brand", "sinds": "maandag"}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("List the resolved water incidents.",
               {"status": "resolved", "incident_type": "water"}, {}),
        "nl": ("Toon de opgeloste waterincidenten.",
               {"status": "opgelost", "incident_type": "water"}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("Search every incident from last week.",
               {"status": "all", "since": "last week"}, {}),
        "nl": ("Zoek alle incidenten van vorige week.",
               {"status": "alle", "sinds": "vorige week"}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("Were there power problems yesterday?",
               {"incident_type": "power", "since": "yesterday"}, {}),
        "nl": ("Waren er gisteren stroomproblemen?",
               {"incident_type": "stroom", "sinds": "gisteren"}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("Show the incident list.", {}, {}),
        "nl": ("Laat de incidentenlijst zien.", {}, {}),
    },
    {
        "tool": "search_incidents",
        "en": ("Find open access incidents since March.",
               {"status": "open", "incident_type": "access", "since": "March"}, {}),
        "nl": ("Zoek open toegangsincidenten sinds maart.",
               {"status": "open", "incident_type": "toegang", "sinds": "maart"}, {}),
    },
    # --- update_incident -------------------------------------------------------------
    {
        "tool": "update_incident",
        "en": ("Mark incident 2107 as resolved.",
               {"incident_id": "2107", "status": "resolved"}, {}),
        "nl": ("Markeer incident 2107 als opgelost.",
               {"incident_id": "2107", "status": "opgelost"}, {}),
    },
    {
        "tool": "update_incident",
        "en": ("Set incident 88 to investigating.",
               {"incident_id": "88", "status": "investigating"}, {}),
        "nl": ("Zet incident 88 op in onderzoek.",
               {"incident_id": "88", "status": "in_onderzoek"}, {}),
    },
    {
        "tool": "update_incident",
        "en": ("Add a note to incident 501: sprinkler replaced.",
               {"incident_id": "501", "note": "sprinkler replaced"}, {}),
        "nl": ("Voeg een notitie toe aan incident 501: sprinkler vervangen.",
               {"incident_id": "501", "notitie": "sprinkler vervangen"}, {}),
    },
    {
        "tool": "update_incident",
        "en": ("Reopen incident 2107.",
               {"incident_id": "2107", "status": "open"}, {}),
        "nl": ("Heropen incident 2107.",
               {"incident_id": "2107", "status": "open"}, {}),
    },
    {
        "tool": "update_incident",
        "en": ("Update incident 13, status resolved, note: false alarm.",
               {"incident_id": "13", "status": "resolved", "note": "false alarm"}, {}),
        "nl": ("Werk incident 13 bij, status opgelost, notitie: vals alarm.",
               {"incident_id": "13", "status": "opgelost", "notitie": "vals alarm"}, {}),
    },
    {
        "tool": "update_incident",
        "en": ("Open the incident update screen.", {}, {}),
        "nl": ("Open het scherm om incidenten bij te werken.", {}, {}),
    },
    # --- log_access ----------------------------------------------------------------------
    {
        "tool": "log_access",
        "en": ("Log a visitor: Maria Keller, badge 42, here for maintenance.",
               {"visitor_name": "Maria Keller", "badge_id": "42", "purpose": "maintenance"}, {}),
        "nl": ("Registreer een bezoeker: Maria Keller, badge 42, hier voor onderhoud.",
               {"bezoeker_naam": "Maria Keller", "badge_id": "42", "doel": "onderhoud"}, {}),
    },
    {
        "tool": "log_access",
        "en": ("A technician named John Doe just entered the floor.",
               {"visitor_name": "John Doe"}, {}),
        "nl": ("Er is net een monteur binnengekomen die John Doe heet.",
               {"bezoeker_naam": "John Doe"}, {}),
    },
    {
        "tool": "log_access",
        "en": ("Visitor with badge 7 is on the floor for an audit.",
               {"badge_id": "7", "purpose": "audit"}, {}),
        "nl": ("Bezoeker met badge 7 is op de vloer voor een audit.",
               {"badge_id": "7", "doel": "audit"}, {}),
    },
    {
        "tool": "log_access",
        "en": ("Register access for Elena Brand... sorry, Elena Brandt, with dt.",
               {"visitor_name": "Elena Brandt"}, {}),
        "nl": ("Registreer toegang voor Elena Brand... sorry, Elena Brandt, met dt.",
               {"bezoeker_naam": "Elena Brandt"}, {}),
    },
    {
        "tool": "log_access",
        "en": ("Lock a visit... I mean log a visit for badge 19.",
               {"badge_id": "19"}, {}),
        "nl": ("Vergrendel een bezoek... ik bedoel registreer een bezoek voor badge 19.",
               {"badge_id": "19"}, {}),
    },
    {
        "tool": "log_access",
        "en": ("Open the access log.", {}, {}),
        "nl": ("Open het toegangsregister.", {}, {}),
    },
]


def enum_matchers(tool_doc):
    """enum parameters always compare with the strict literal matcher."""
    return {
        p["name"]: "enum_strict"
        for p in tool_doc["parameters"]
        if "enum" in p
    }


def build_file(language, tools, synonyms, tool_name_for):
    tool_by_name = {t["name"]: t for t in tools}
    lines = [json.dumps({"header": True, "tools": tools, "synonyms": synonyms}, ensure_ascii=False)]
    for i, scenario in enumerate(SCENARIOS, start=1):
        utterance, args, extra_matchers = scenario[language]
        tool_name = tool_name_for(scenario["tool"])
        matchers = dict(enum_matchers(tool_by_name[tool_name]))
        matchers.update(extra_matchers)
        # only keep matchers that could ever fire or document intent
        case = {
            "id": f"inc-{i:02d}-{language}",
            "language": language,
            "utterance": utterance,
            "ideal": {"name": tool_name, "arguments": args},
            "matchers": matchers,
        }
        lines.append(json.dumps(case, ensure_ascii=False))
    return "\n".join(lines) + "\n"


def main():
    assert len(SCENARIOS) == 55, f"expected 55 scenarios, found {len(SCENARIOS)}"
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    en = build_file("en", TOOLS_EN, SYNONYMS_EN, lambda name: name)
    nl = build_file("nl", TOOLS_NL, SYNONYMS_NL, lambda name: TOOL_NAME_NL[name])
    (OUT_DIR / "incidents_en.jsonl").write_text(en, encoding="utf-8")
    (OUT_DIR / "incidents_nl.jsonl").write_text(nl, encoding="utf-8")
    print(f"wrote {OUT_DIR / 'incidents_en.jsonl'}")
    print(f"wrote {OUT_DIR / 'incidents_nl.jsonl'}")


if __name__ == "__main__":
    main()
