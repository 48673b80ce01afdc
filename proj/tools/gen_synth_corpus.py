#!/usr/bin/env python3
"""Regenerates fixtures/synth.csv.

Six projects of sixty requirements each, twelve security-related per project
(1:4 imbalance). Security requirements draw from a shared security vocabulary
so cross-project transfer has signal; both classes mix in project-specific
jargon as noise.
"""

import csv
import random
import sys

PROJECTS = {
    "adas": ("object detection pipeline", ["radar track", "lane model", "fusion stack"]),
    "bodyctl": ("body control unit", ["door actuator", "window lift", "interior light"]),
    "diagnostics": ("diagnostics service", ["fault memory", "session log", "test routine"]),
    "gateway": ("central gateway", ["CAN frame", "routing table", "bus load"]),
    "infotainment": ("infotainment head unit", ["media index", "navigation map", "user profile"]),
    "telematics": ("telematics module", ["GNSS position", "cellular modem", "trip record"]),
}

SEC_TEMPLATES = [
    "The {sys} shall encrypt the {obj} with AES-128 before any transmission.",
    "The {sys} shall authenticate remote peers using mutual TLS certificates.",
    "The {sys} shall verify the signature of downloaded software before activation.",
    "The {sys} shall store cryptographic keys in the hardware security module.",
    "The {sys} shall enforce access control on every request touching the {obj}.",
    "The {sys} shall detect and report intrusion attempts on its interfaces.",
    "The {sys} shall reject messages that fail the integrity check of the {obj}.",
    "The {sys} shall lock the account after five failed authentication attempts.",
    "The {sys} shall protect stored credentials against unauthorized disclosure.",
    "The {sys} shall log security events to a tamper-evident audit trail.",
    "The {sys} shall validate certificates against the trusted root store.",
    "The {sys} shall require secure boot before loading the {obj} firmware.",
    "The {sys} shall sanitize authentication tokens from exported {obj} dumps.",
    "The {sys} shall renew session keys at least once per ignition cycle.",
]

NONSEC_TEMPLATES = [
    "The {sys} shall display the {obj} within 200 milliseconds of a request.",
    "The {sys} shall persist the {obj} across ignition cycles.",
    "The {sys} shall support configuration of the {obj} via the service menu.",
    "The {sys} shall refresh the {obj} at a rate of ten hertz.",
    "The {sys} shall expose the {obj} through the diagnostic interface.",
    "The {sys} shall report the {obj} to the instrument cluster on change.",
    "The {sys} shall archive the {obj} for ninety days.",
    "The {sys} shall resume normal operation within two seconds after wakeup.",
    "The {sys} shall limit memory use of the {obj} cache to four megabytes.",
    "The {sys} shall provide a localized label for the {obj} in all languages.",
    "The {sys} shall schedule background maintenance of the {obj} at midnight.",
    "The {sys} shall notify the driver when the {obj} is unavailable.",
    "The {sys} shall track the version of the {obj} in the release notes.",
    "The {sys} shall allow the workshop to calibrate the {obj}.",
    "The {sys} shall average the {obj} over a sliding one minute window.",
    "The {sys} shall tolerate a supply voltage drop of five hundred ms.",
]

# Requirement slots per section that carry the security class; the rest are
# non-security. Sections 1 and 4 stay all-functional on purpose.
SEC_SLOTS = {2: [0, 5], 3: [1, 3, 6, 8], 5: [2, 4, 9], 6: [0, 4, 7]}


def main(out_path: str) -> None:
    rng = random.Random(42)
    rows = [("project", "section", "req_id", "text", "label")]
    for project in sorted(PROJECTS):
        sys_name, jargon = PROJECTS[project]
        for section in range(1, 7):
            sec_slots = set(SEC_SLOTS.get(section, []))
            for slot in range(10):
                req_no = (section - 1) * 10 + slot + 1
                is_sec = slot in sec_slots
                template = rng.choice(SEC_TEMPLATES if is_sec else NONSEC_TEMPLATES)
                text = template.format(sys=sys_name, obj=rng.choice(jargon))
                rows.append(
                    (
                        project,
                        f"S{section}",
                        f"R{req_no:03d}",
                        text,
                        "sec" if is_sec else "nonsec",
                    )
                )
    with open(out_path, "w", newline="") as fh:
        csv.writer(fh, lineterminator="\n").writerows(rows)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "fixtures/synth.csv")
