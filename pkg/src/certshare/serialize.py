"""Versioned, self-describing serialization for shares, keys, certificates,
and transcripts.

Every JSON payload carries {"format": ..., "version": ...}; field elements
serialize as little-endian coefficient integer lists, polynomials and
certificates as arrays of those.  A compact binary layout exists for
adaptive-scheme shares, whose derived parameters reach thousands of
positions.
"""

from __future__ import annotations

import base64
import json
import struct
from typing import Any

from . import bk2of2
from .access import AccessStructure
from .acd import AcdParams, AcdShare, AcdVerificationKey
from .css import ClassicalShareSet
from .games import Transcript
from .gf import FieldElem, FieldSpec, Polynomial
from .nscd import NscdKeys, NscdShare
from .qsim import Basis, ProductShare

VERSION = 1


class SerializationError(ValueError):
    """Malformed, mistagged, or wrong-version payload."""


def canonical_json(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def _expect(obj: dict, fmt: str) -> dict:
    if not isinstance(obj, dict):
        raise SerializationError(f"expected an object for {fmt}, got {type(obj).__name__}")
    got_fmt = obj.get("format")
    if got_fmt != fmt:
        raise SerializationError(f"format mismatch: expected {fmt!r}, got {got_fmt!r}")
    version = obj.get("version")
    if version != VERSION:
        raise SerializationError(f"unsupported {fmt} version {version!r}")
    return obj


# -- field primitives ---------------------------------------------------------


def field_spec_to_json(spec: FieldSpec) -> dict:
    return {"p": spec.p, "k": spec.k, "modulus": list(spec.modulus)}


def field_spec_from_json(obj: dict) -> FieldSpec:
    try:
        return FieldSpec.of(int(obj["p"]), int(obj["k"]), tuple(obj["modulus"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SerializationError(f"bad field spec: {exc}") from exc


def elem_to_json(elem: FieldElem) -> list[int]:
    return list(elem.coeffs)


def elem_from_json(spec: FieldSpec, coeffs) -> FieldElem:
    try:
        return spec.elem(tuple(int(c) for c in coeffs))
    except (TypeError, ValueError) as exc:
        raise SerializationError(f"bad field element {coeffs!r}: {exc}") from exc


def polynomial_to_json(poly: Polynomial) -> dict:
    return {
        "format": "certshare/polynomial",
        "version": VERSION,
        "field": field_spec_to_json(poly.spec),
        "coeffs": [elem_to_json(c) for c in poly.coeffs],
    }


def polynomial_from_json(obj: dict) -> Polynomial:
    data = _expect(obj, "certshare/polynomial")
    spec = field_spec_from_json(data["field"])
    return Polynomial.make(spec, [elem_from_json(spec, c) for c in data["coeffs"]])


def product_share_to_json(share: ProductShare) -> dict:
    return {
        "format": "certshare/product-share",
        "version": VERSION,
        "field": field_spec_to_json(share.spec),
        "positions": [
            {"basis": p.basis.value, "value": elem_to_json(p.value)}
            for p in share.positions
        ],
    }


def product_share_from_json(obj: dict) -> ProductShare:
    data = _expect(obj, "certshare/product-share")
    spec = field_spec_from_json(data["field"])
    pairs = []
    for rec in data["positions"]:
        try:
            basis = Basis(rec["basis"])
        except (KeyError, ValueError) as exc:
            raise SerializationError(f"bad basis tag in {rec!r}") from exc
        pairs.append((basis, elem_from_json(spec, rec["value"])))
    return ProductShare.of(pairs)


# -- adaptive scheme ----------------------------------------------------------


def acd_params_to_json(params: AcdParams) -> dict:
    return {
        "format": "certshare/acd-params",
        "version": VERSION,
        "n": params.n,
        "k": params.k,
        "t": params.t,
        "r": params.r,
        "ell": params.ell,
        "deg_p": params.deg_p,
        "lambda": params.lam,
        "variant": params.variant,
        "field": field_spec_to_json(params.field),
    }


def acd_params_from_json(obj: dict) -> AcdParams:
    data = _expect(obj, "certshare/acd-params")
    return AcdParams(
        n=int(data["n"]),
        k=int(data["k"]),
        t=int(data["t"]),
        r=int(data["r"]),
        ell=int(data["ell"]),
        deg_p=int(data["deg_p"]),
        field=field_spec_from_json(data["field"]),
        lam=int(data["lambda"]),
        variant=str(data["variant"]),
    )


def acd_share_to_json(share: AcdShare) -> dict:
    return {
        "format": "certshare/acd-share",
        "version": VERSION,
        "index": share.index,
        "positions": product_share_to_json(share.positions),
    }


def acd_share_from_json(obj: dict) -> AcdShare:
    data = _expect(obj, "certshare/acd-share")
    return AcdShare(int(data["index"]), product_share_from_json(data["positions"]))


def acd_vk_to_json(vk: AcdVerificationKey, field: FieldSpec) -> dict:
    return {
        "format": "certshare/acd-vk",
        "version": VERSION,
        "field": field_spec_to_json(field),
        "data_indices": [list(d) for d in vk.data_indices],
        "check_values": [
            {str(j): elem_to_json(y) for j, y in checks.items()}
            for checks in vk.check_values
        ],
    }


def acd_vk_from_json(obj: dict) -> AcdVerificationKey:
    data = _expect(obj, "certshare/acd-vk")
    spec = field_spec_from_json(data["field"])
    return AcdVerificationKey(
        tuple(tuple(int(j) for j in d) for d in data["data_indices"]),
        tuple(
            {int(j): elem_from_json(spec, y) for j, y in checks.items()}
            for checks in data["check_values"]
        ),
    )


def acd_cert_to_json(cert, field: FieldSpec) -> dict:
    return {
        "format": "certshare/acd-cert",
        "version": VERSION,
        "field": field_spec_to_json(field),
        "elements": [elem_to_json(c) for c in cert],
    }


def acd_cert_from_json(obj: dict) -> list[FieldElem]:
    data = _expect(obj, "certshare/acd-cert")
    spec = field_spec_from_json(data["field"])
    return [elem_from_json(spec, c) for c in data["elements"]]


_ACD_MAGIC = b"ACS1"


def acd_share_to_bytes(share: AcdShare) -> bytes:
    """Compact binary layout: header, basis bitmap, uint32 packed values."""
    spec = share.positions.spec
    t = len(share.positions)
    out = bytearray(_ACD_MAGIC)
    out += struct.pack("<BBHI", VERSION, spec.p, spec.k, share.index)
    out += struct.pack("<I", t)
    bitmap = bytearray((t + 7) // 8)
    for i, pos in enumerate(share.positions.positions):
        if pos.basis is Basis.FOURIER:
            bitmap[i // 8] |= 1 << (i % 8)
    out += bytes(bitmap)
    for pos in share.positions.positions:
        out += struct.pack("<I", pos.value.to_int())
    return bytes(out)


def acd_share_from_bytes(data: bytes) -> AcdShare:
    if data[:4] != _ACD_MAGIC:
        raise SerializationError("bad magic for binary acd share")
    version, p, k, index = struct.unpack_from("<BBHI", data, 4)
    if version != VERSION:
        raise SerializationError(f"unsupported binary version {version}")
    spec = FieldSpec.of(p, k)
    (t,) = struct.unpack_from("<I", data, 12)
    offset = 16
    bitmap = data[offset : offset + (t + 7) // 8]
    offset += (t + 7) // 8
    pairs = []
    for i in range(t):
        (value,) = struct.unpack_from("<I", data, offset + 4 * i)
        basis = Basis.FOURIER if bitmap[i // 8] >> (i % 8) & 1 else Basis.COMPUTATIONAL
        pairs.append((basis, spec.elem(value)))
    return AcdShare(index, ProductShare.of(pairs))


# -- no-signaling scheme -------------------------------------------------------


def nscd_share_to_json(share: NscdShare) -> dict:
    return {
        "format": "certshare/nscd-share",
        "version": VERSION,
        "index": share.index,
        "n_bits": share.n_bits,
        "kappa": share.kappa,
        "qshare": product_share_to_json(share.qshare),
        "classical_slice": {
            str(j): base64.b64encode(blob).decode()
            for j, blob in sorted(share.classical_slice.items())
        },
    }


def nscd_share_from_json(obj: dict) -> NscdShare:
    data = _expect(obj, "certshare/nscd-share")
    return NscdShare(
        index=int(data["index"]),
        qshare=product_share_from_json(data["qshare"]),
        classical_slice={
            int(j): base64.b64decode(blob)
            for j, blob in data["classical_slice"].items()
        },
        n_bits=int(data["n_bits"]),
        kappa=int(data["kappa"]),
    )


def nscd_keys_to_json(keys: NscdKeys) -> dict:
    return {
        "format": "certshare/nscd-keys",
        "version": VERSION,
        "kappa": keys.kappa,
        "n_bits": keys.n_bits,
        "vk": [
            [{"x": list(k.x), "theta": list(k.theta)} for k in multi.bits]
            for multi in keys.vk
        ],
    }


def nscd_keys_from_json(obj: dict) -> NscdKeys:
    data = _expect(obj, "certshare/nscd-keys")
    return NscdKeys(
        tuple(
            bk2of2.Bk22MultiKey(
                tuple(
                    bk2of2.Bk22Key(tuple(rec["x"]), tuple(rec["theta"]))
                    for rec in per_share
                )
            )
            for per_share in data["vk"]
        ),
        int(data["kappa"]),
        int(data["n_bits"]),
    )


def nscd_cert_to_json(cert) -> dict:
    return {"format": "certshare/nscd-cert", "version": VERSION, "bits": list(cert)}


def nscd_cert_from_json(obj: dict) -> tuple[int, ...]:
    data = _expect(obj, "certshare/nscd-cert")
    return tuple(int(b) for b in data["bits"])


# -- classical shares and transcripts -----------------------------------------


def classical_shares_to_json(share_set: ClassicalShareSet) -> dict:
    return {
        "format": "certshare/classical-shares",
        "version": VERSION,
        "structure": share_set.structure.to_json(),
        "scheme_tag": share_set.scheme_tag,
        "shares": [base64.b64encode(s).decode() for s in share_set.shares],
    }


def classical_shares_from_json(obj: dict) -> ClassicalShareSet:
    data = _expect(obj, "certshare/classical-shares")
    return ClassicalShareSet(
        AccessStructure.from_json(data["structure"]),
        tuple(base64.b64decode(s) for s in data["shares"]),
        str(data["scheme_tag"]),
    )


def transcript_to_json(transcript: Transcript) -> dict:
    return {
        "format": "certshare/transcript",
        "version": VERSION,
        "events": transcript.events,
        "output": transcript.output,
    }


def transcript_from_json(obj: dict) -> Transcript:
    data = _expect(obj, "certshare/transcript")
    return Transcript(list(data["events"]), data["output"])
