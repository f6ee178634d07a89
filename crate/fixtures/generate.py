#!/usr/bin/env python3
"""Regenerates the fixture CSVs. Output is deterministic."""

import csv
import random
from pathlib import Path

HERE = Path(__file__).resolve().parent
KWGR = "http://stko-kwg.geog.ucsb.edu/lod/resource/"

rng = random.Random(20230601)


def square(x0, y0, size):
    x1, y1 = round(x0 + size, 6), round(y0 + size, 6)
    return f"POLYGON (({x0} {y0}, {x1} {y0}, {x1} {y1}, {x0} {y1}, {x0} {y0}))"


# zip -> (state, county, x0, y0, size)
ZIPS = {
    # New Jersey: a row of adjacent 0.1 degree squares
    "07677": ("New Jersey", "Bergen", -74.9, 40.0, 0.1),
    "08817": ("New Jersey", "Middlesex", -74.8, 40.0, 0.1),
    "07601": ("New Jersey", "Bergen", -74.7, 40.0, 0.1),
    "07030": ("New Jersey", "Hudson", -74.6, 40.0, 0.1),
    "08901": ("New Jersey", "Middlesex", -74.5, 40.0, 0.1),
    "07302": ("New Jersey", "Hudson", -74.4, 40.0, 0.1),
    "07728": ("New Jersey", "Monmouth", -74.3, 40.0, 0.1),
    "07001": ("New Jersey", "Middlesex", -74.2, 40.0, 0.1),
    # California
    "95814": ("California", "Sacramento", -121.5, 38.57, 0.02),
    "95816": ("California", "Sacramento", -121.48, 38.57, 0.02),
    # Washington
    "98101": ("Washington", "King", -122.4, 47.5, 0.1),
    "98104": ("Washington", "King", -122.3, 47.5, 0.1),
    "98109": ("Washington", "King", -122.2, 47.5, 0.1),
    "98201": ("Washington", "Snohomish", -122.1, 47.5, 0.1),
}


def inside(zip_code, fx, fy):
    _, _, x0, y0, size = ZIPS[zip_code]
    return round(x0 + size * fx, 6), round(y0 + size * fy, 6)


def write_places():
    rows = []
    for i, (zip_code, (state, county, x0, y0, size)) in enumerate(ZIPS.items()):
        same_as = f"{KWGR}zipcode.{zip_code}" if i % 2 == 0 else ""
        rows.append([zip_code, state, county, square(x0, y0, size), same_as])
    rows.append(["ABCDE", "New Jersey", "Bergen", square(0, 0, 1), ""])  # dirty: bad zip
    with open(HERE / "places.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["zip", "state", "county", "wkt", "kwg_sameas"])
        w.writerows(rows)


PRODUCTS = {
    "bolt": ("2021", "Chevrolet", "Bolt EV", "BEV", "General Motors", "Compact", "Light-Duty", "L2;DCFC", "J1772;J1772COMBO"),
    "mache": ("2021", "Ford", "Mustang Mach-E", "BEV", "Ford Motor Company", "SUV", "Light-Duty", "L2;DCFC", "J1772;CCS"),
    "i3": ("2018", "BMW", "i3", "BEV", "BMW of North America Inc.", "Compact", "Light-Duty", "L2;DCFC", "J1772;J1772COMBO"),
    "leaf21": ("2021", "Nissan", "Leaf", "BEV", "Nissan North America", "Compact", "Light-Duty", "L2;DCFC", "J1772;CHAdeMO"),
    "leaf20": ("2020", "Nissan", "Leaf", "BEV", "Nissan North America", "Compact", "Light-Duty", "L2;DCFC", "J1772;CHAdeMO"),
    "model3": ("2021", "Tesla", "Model 3", "BEV", "Tesla Inc.", "Sedan", "Light-Duty", "L2;DCFC", "TESLA"),
    "prius": ("2021", "Toyota", "Prius Prime", "PHEV", "Toyota Motor North America", "Compact", "Light-Duty", "L1;L2", "J1772"),
    "outlander": ("2021", "Mitsubishi", "Outlander", "PHEV", "Mitsubishi Motors", "SUV", "Light-Duty", "L2", "J1772"),
}

# (zip, registration year) -> {product: count}
REGISTRATIONS = {
    ("07677", "2021"): {"bolt": 70, "mache": 50, "leaf21": 10, "model3": 15, "prius": 5},
    ("08817", "2021"): {"bolt": 60, "mache": 39, "leaf21": 10, "model3": 15, "prius": 5},
    ("07601", "2021"): {"bolt": 100, "mache": 50, "leaf21": 10, "model3": 15, "prius": 5},
    ("07030", "2021"): {"bolt": 40, "mache": 20, "leaf21": 10, "model3": 15, "prius": 5},
    ("08901", "2021"): {"bolt": 150, "mache": 50, "leaf21": 10, "model3": 15, "prius": 5},
    ("07302", "2021"): {"bolt": 58, "mache": 40, "leaf21": 10, "model3": 15, "prius": 5},
    ("07728", "2021"): {"bolt": 60, "mache": 40, "leaf21": 10, "model3": 15, "prius": 5},
    ("07677", "2020"): {"leaf20": 8, "model3": 6},
    ("08817", "2020"): {"leaf20": 8, "i3": 5},
    ("07601", "2020"): {"leaf20": 8, "bolt": 3},
    # 36 identical records: one collection with amount 36
    ("07677", "2019"): {"i3": 36},
    ("95814", "2021"): {"leaf21": 12, "outlander": 6, "model3": 20, "bolt": 10},
    ("95816", "2021"): {"leaf20": 4},
    ("98101", "2021"): {"model3": 25, "bolt": 5},
    ("98104", "2020"): {"prius": 3},
}


# earlier adoption history for the New Jersey zips; 07677/2019 keeps the lone i3 collection
for zip_code, base in [("07677", 4), ("08817", 3), ("07601", 5), ("07030", 2), ("08901", 6), ("07302", 2), ("07728", 3)]:
    for step, year in enumerate(["2018", "2019", "2020"]):
        counts = REGISTRATIONS.setdefault((zip_code, year), {})
        if (zip_code, year) == ("07677", "2019"):
            continue
        for product, scale in [("bolt", 2), ("leaf20", 1), ("model3", 2), ("prius", 1)]:
            counts.setdefault(product, base * scale * (step + 1))


def vin():
    return "".join(rng.choice("ABCDEFGHJKLMNPRSTUVWXYZ0123456789") for _ in range(8))


def write_registrations():
    rows = []
    for (zip_code, year), counts in REGISTRATIONS.items():
        for product, n in counts.items():
            p = PRODUCTS[product]
            for _ in range(n):
                rows.append([vin(), zip_code, p[0], year, *p[1:]])
    rng.shuffle(rows)
    p = PRODUCTS["bolt"]
    dirty = [
        ["123", "07677", p[0], "2021", *p[1:]],  # short vin
        [vin(), "7677", p[0], "2021", *p[1:]],  # four-digit zip
        [vin(), "07677", p[0], "21", *p[1:]],  # two-digit year
        [vin(), "07677", p[0], "2021", "Chevrolet", "Bolt EV", "HEV", *p[4:]],  # technology
        [vin(), "07677", p[0], "2021", *p[1:7], "L2;DCFC", "J1772;SUPERPLUG"],  # connector
    ]
    for i, row in enumerate(dirty):
        rows.insert(100 + 200 * i, row)
    with open(HERE / "registrations.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([
            "vin8", "zip", "model_year", "registration_year", "make", "model", "technology",
            "manufacturer", "use_case", "weight_level", "charger_types", "connector_types",
        ])
        w.writerows(rows)


H24 = "24 hours daily  "

# (id, name, zip, fx, fy, access, network, hours, open_date, pricing, parking, user_group, chargers)
STATIONS = [
    # New Jersey: CCS totals per zip 4, 9, 20, 2, 5, 1, 10
    ("NJ-001", "Paramus Park", "07677", 0.3, 0.3, "public", "ChargePoint", H24, "2019-04-12", "$0.35/kWh", "", "", "DCFC:J1772COMBO:2;DCFC:CHAdeMO:1;L2:J1772:4"),
    ("NJ-002", "Garden State Plaza", "07677", 0.6, 0.7, "public", "Electrify America", H24, "2021-06-01", "$0.43/kWh", "", "", "DCFC:J1772COMBO:2"),
    ("NJ-003", "Edison Library", "08817", 0.4, 0.5, "public", "EVgo", "7am-10pm", "2020-02-20", "$0.30/kWh", "", "", "DCFC:J1772COMBO:4"),
    ("NJ-004", "Menlo Park Mall", "08817", 0.7, 0.2, "public", "ChargePoint", H24, "2021-09-15", "$0.35/kWh", "Customers only", "", "DCFC:J1772COMBO:5;L2:J1772:2"),
    ("NJ-005", "Edison Supercharger", "08817", 0.2, 0.8, "public", "Tesla", H24, "2021-03-03", "Tesla pricing", "", "", "DCFC:TESLA:8"),
    ("NJ-006", "Hackensack Medical", "07601", 0.5, 0.5, "public", "ChargePoint", H24, "2019-08-30", "Free", "", "", "DCFC:J1772COMBO:10"),
    ("NJ-007", "Hackensack Transit", "07601", 0.8, 0.3, "public", "EVgo", H24, "2021-11-11", "$0.40/kWh", "", "", "DCFC:J1772COMBO:10;DCFC:CHAdeMO:2"),
    ("NJ-008", "Hoboken Terminal", "07030", 0.5, 0.5, "public", "", "6am-midnight", "2020", "Free", "", "", "DCFC:J1772COMBO:2;L2:J1772:6"),
    ("NJ-009", "New Brunswick Deck", "08901", 0.5, 0.5, "public", "Electrify America", H24, "2021-05-05", "$0.43/kWh", "", "", "DCFC:J1772COMBO:5"),
    ("NJ-010", "Jersey City Hall", "07302", 0.5, 0.5, "public", "ChargePoint", H24, "2018-10-10", "$0.30/kWh", "", "", "DCFC:J1772COMBO:1;L2:J1772:2"),
    ("NJ-011", "Red Bank Station", "07728", 0.3, 0.6, "public", "EVgo", H24, "2020-07-07", "$0.40/kWh", "", "", "DCFC:J1772COMBO:6;DCFC:CHAdeMO:2"),
    ("NJ-012", "Freehold Raceway", "07728", 0.7, 0.4, "public", "Electrify America", H24, "2021-01-20", "$0.43/kWh", "", "", "DCFC:J1772COMBO:4"),
    ("NJ-013", "Avenel Works", "07001", 0.5, 0.5, "private", "", "Employees 8am-6pm", "2020-03-01", "", "", "Employees", "L2:J1772:4"),
    ("NJ-014", "Hoboken Library", "07030", 0.2, 0.8, "public", "ChargePoint", H24, "2019-05-05", "Free", "", "", "L2:J1772:2"),
    ("NJ-015", "Bergen Community", "07677", 0.8, 0.2, "public", "", "8am-8pm", "2020-09-09", "Free", "", "", "L2:J1772:3;L1:NEMA:2"),
    ("NJ-016", "Rutgers Lot 8", "08901", 0.2, 0.2, "public", "ChargePoint", H24, "2019-12-01", "$1/hour", "", "", "L2:J1772:6"),
    # exactly on the 07677 / 08817 border: within neither zip
    ("NJ-017", "Border Plaza", "07677", 1.0, 0.3, "public", "EVgo", H24, "2021-02-02", "$0.40/kWh", "", "", "DCFC:J1772COMBO:3"),
    # California: the Listing 3 scenario
    ("CA-001", "Capitol Garage", "95814", 0.3, 0.3, "public", "ChargePoint", H24, "2020-01-15", "$0.35/kWh", "", "", "DCFC:CHAdeMO:2;L2:J1772:4"),
    ("CA-002", "Downtown Plaza", "95814", 0.6, 0.6, "public", "EVgo", H24, "2020-04-01", "$0.40/kWh", "", "", "DCFC:CHAdeMO:2"),
    ("CA-003", "Old Sacramento", "95814", 0.7, 0.2, "public", "ChargePoint", "24 hours daily", "2019-06-01", "$0.35/kWh", "", "", "DCFC:CHAdeMO:1"),
    ("CA-004", "State Fleet Yard", "95814", 0.2, 0.8, "private", "ChargePoint", H24, "2018-02-01", "", "Fleet only", "State employees", "DCFC:CHAdeMO:2"),
    ("CA-005", "Golden 1 Center", "95814", 0.8, 0.8, "public", "ChargePoint", H24, "2021-10-10", "$0.35/kWh", "", "", "DCFC:J1772COMBO:4"),
    ("CA-006", "Midtown Market", "95816", 0.5, 0.5, "public", "ChargePoint", H24, "2021-03-03", "$0.35/kWh", "", "", "DCFC:CHAdeMO:2"),
    ("CA-007", "Sutter Hospital", "95816", 0.3, 0.7, "public", "", "7am-7pm", "2019-01-01", "Free", "", "", "L2:J1772:8"),
    # Washington
    ("WA-001", "Pioneer Square", "98104", 0.5, 0.5, "public", "", H24, "2020-05-05", "Free", "", "", "L2:J1772:4"),
    ("WA-002", "Everett Station", "98201", 0.5, 0.5, "public", "ChargePoint", H24, "2021-05-05", "$0.30/kWh", "", "", "DCFC:J1772COMBO:2"),
    ("WA-003", "Westlake Center", "98101", 0.4, 0.6, "public", "Tesla", H24, "2019-07-07", "Tesla pricing", "", "", "DCFC:TESLA:12"),
]


def write_stations():
    rows = []
    for sid, name, zip_code, fx, fy, access, network, hours, opened, pricing, parking, group, chargers in STATIONS:
        lon, lat = inside(zip_code, fx, fy)
        rows.append([sid, name, lon, lat, zip_code, access, network, hours, opened, pricing, parking, group, chargers])
    rows.append(["NJ-900", "Broken GPS", "east", "40.05", "07677", "public", "", H24, "2021-01-01", "", "", "", "L2:J1772:1"])
    rows.append(["NJ-901", "Exclusive Public", -74.85, 40.05, "07677", "public", "", H24, "2021-01-01", "", "", "Members", "L2:J1772:1"])
    with open(HERE / "stations.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([
            "station_id", "name", "lon", "lat", "zip", "access", "network", "operating_hours",
            "open_date", "pricing", "parking_restriction", "user_group", "charger_groups",
        ])
        w.writerows(rows)


def line(*points):
    return "LINESTRING (" + ", ".join(f"{x} {y}" for x, y in points) + ")"


def point(x, y):
    return f"POINT ({x} {y})"


# (id, kind, wkt, voltage_class, min_kv, max_kv, summer, winter, operating, status, owner)
ASSETS = [
    ("NJ-L500-1", "line", line((-74.95, 40.05), (-74.65, 40.05)), "500", "", "", "", "", "", "IN SERVICE", "PSE&G"),
    ("NJ-L500-2", "line", line((-74.55, 40.05), (-74.55, 40.2)), "500", "", "", "", "", "", "IN SERVICE", "PSE&G"),
    ("NJ-L500-3", "line", line((-74.35, 40.05), (-74.25, 40.08), (-74.25, 40.2)), "500", "", "", "", "", "", "IN SERVICE", "JCP&L"),
    ("NJ-L345-1", "line", line((-74.45, 39.95), (-74.45, 40.15)), "345", "", "", "", "", "", "IN SERVICE", "PSE&G"),
    ("NJ-L230-1", "line", line((-74.88, 39.95), (-74.88, 40.15)), "230", "", "", "", "", "", "PROPOSED", "PSE&G"),
    ("NJ-S-1", "substation", point(-74.65, 40.05), "", "230", "500", "", "", "", "IN SERVICE", ""),
    ("NJ-P-1", "plant", point(-74.42, 40.02), "", "", "", "410.5", "432", "398.25", "OP", ""),
    ("WA-L115-1", "line", line((-122.35, 47.55), (-122.25, 47.55)), "115", "", "", "", "", "", "IN SERVICE", "Seattle City Light"),
    ("WA-L230-1", "line", line((-122.18, 47.52), (-122.12, 47.58)), "230", "", "", "", "", "", "IN SERVICE", "Seattle City Light"),
    ("WA-L115-2", "line", line((-122.05, 47.45), (-122.05, 47.55)), "115", "", "", "", "", "", "IN SERVICE", "Snohomish PUD"),
    ("WA-S-1", "substation", point(-122.37, 47.52), "", "115", "230", "", "", "", "IN SERVICE", ""),
    ("WA-P-1", "plant", point(-122.15, 47.57), "", "", "", "90", "95", "88.5", "OP", ""),
    ("BAD-1", "line", "LINESTRING (1 2)", "500", "", "", "", "", "", "", ""),
]


def write_transmission():
    with open(HERE / "transmission.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow([
            "asset_id", "kind", "wkt", "voltage_class", "min_voltage_kv", "max_voltage_kv",
            "summer_mw", "winter_mw", "operating_mw", "status", "owner",
        ])
        w.writerows(ASSETS)


if __name__ == "__main__":
    write_places()
    write_registrations()
    write_stations()
    write_transmission()
