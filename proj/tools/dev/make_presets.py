#!/usr/bin/env python3
"""Writes data/gait_presets.json. Edit the numbers here, then re-run."""
import json, math, pathlib

A = math.radians(100.0)
NEUTRAL = 0.5


def wheel(drive=0.0, amp=0.0, out=1.0, inn=1.0, so=0.0, si=0.0, ext=NEUTRAL, lift=0.0, phase=0.0):
    return {
        "drive_spin_rad_s": drive,
        "sweep_amplitude_rad": amp,
        "sweep_out_rate_rad_s": out,
        "sweep_in_rate_rad_s": inn,
        "spin_during_sweep_out_rad_s": so,
        "spin_during_sweep_in_rad_s": si,
        "leg_extension_frac": ext,
        "sweep_in_lift_frac": lift,
        "phase_offset_cycles": phase,
    }


def gait(label, posture="constant", **wheels):
    return {"schema_version": 1, "label": label, "posture": posture, "wheels": wheels}


RRP_RATE = A  # 1 s sweep-out, 1 s sweep-in: a 2 s cycle, 60 cycles in 2 minutes
DS_RATE = 0.6
DS_BOOST = 11.0

presets = [
    gait("BO_RRP",
         FL=wheel(drive=2.0), FR=wheel(drive=2.0),
         RL=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=0.0, si=6.0, lift=0.3, phase=0.0),
         RR=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=0.0, si=6.0, lift=0.3, phase=0.5)),
    gait("TRRP",
         FL=wheel(drive=2.0), FR=wheel(drive=2.0),
         RL=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=-2.2, si=6.0, lift=0.3),
         RR=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=0.0, si=6.0, lift=0.3)),
    gait("DS",
         FL=wheel(drive=-DS_RATE), FR=wheel(drive=DS_RATE),
         RL=wheel(drive=-DS_RATE), RR=wheel(drive=DS_RATE)),
    gait("SINGLE_RRP",
         FL=wheel(), FR=wheel(), RL=wheel(),
         RR=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=9.0, si=8.0)),
    gait("BO_TRRP",
         FL=wheel(drive=-DS_RATE), FR=wheel(drive=DS_RATE), RL=wheel(drive=-DS_RATE),
         RR=wheel(amp=A, out=RRP_RATE, inn=RRP_RATE, so=9.0, si=8.0)),
    gait("ML_INSPIRED", posture="yaw_scheduled",
         FL=wheel(drive=-DS_BOOST, ext=1.0), FR=wheel(drive=DS_BOOST, ext=0.0),
         RL=wheel(drive=-DS_BOOST, ext=1.0),
         RR=wheel(amp=A, out=1.2, inn=5.0, so=0.0, si=12.0, ext=0.0)),
]

doc = {"schema_version": 1, "preset_set_version": "2026.10.1", "presets": presets}
out = pathlib.Path(__file__).resolve().parents[2] / "data" / "gait_presets.json"
out.write_text(json.dumps(doc, indent=2) + "\n")
print("wrote", out)
