"""Credentials, sessions and email OTP.

Passwords are hashed with scrypt (salted, cost-configurable); only the
parameterized hash string is ever stored. Session tokens carry at least
128 bits of entropy. OTP codes are 6 digits, valid for 10 minutes,
single use, and rate limited per email.
"""

from __future__ import annotations

import hashlib
import hmac
import secrets
from dataclasses import dataclass
from datetime import datetime, timedelta
from typing import Callable

from ..diary.models import AuthorRole, isoformat_utc, parse_timestamp
from ..diary.service import utcnow
from ..diary.store import JsonStore
from .mailer import Mailer

OTP_TTL_MINUTES = 10
OTP_MAX_REQUESTS_PER_HOUR = 5


class AuthError(Exception):
    pass


class DuplicateEmail(AuthError):
    pass


class UnknownEmail(AuthError):
    pass


class RateLimited(AuthError):
    pass


@dataclass(frozen=True)
class Principal:
    id: str
    role: AuthorRole


class PasswordHasher:
    """scrypt in a self-describing string: scrypt$<log2n>$<r>$<p>$<salt>$<hash>."""

    def __init__(self, cost: int = 14):
        self.cost = cost  # log2 of the scrypt N parameter

    def hash(self, password: str) -> str:
        salt = secrets.token_bytes(16)
        digest = self._digest(password, salt, self.cost, 8, 1)
        return f"scrypt${self.cost}$8$1${salt.hex()}${digest.hex()}"

    @staticmethod
    def _digest(password: str, salt: bytes, cost: int, r: int, p: int) -> bytes:
        return hashlib.scrypt(
            password.encode(), salt=salt, n=1 << cost, r=r, p=p, maxmem=256 * 1024 * 1024
        )

    @classmethod
    def verify(cls, password: str, stored: str) -> bool:
        try:
            scheme, cost, r, p, salt_hex, digest_hex = stored.split("$")
            if scheme != "scrypt":
                return False
            digest = cls._digest(
                password, bytes.fromhex(salt_hex), int(cost), int(r), int(p)
            )
            return hmac.compare_digest(digest, bytes.fromhex(digest_hex))
        except (ValueError, TypeError):
            return False


class AuthService:
    """Credential registry plus session and OTP flows, persisted in the store."""

    def __init__(
        self,
        store: JsonStore,
        hasher: PasswordHasher | None = None,
        clock: Callable[[], datetime] = utcnow,
        token_ttl_hours: int = 24,
    ):
        self.store = store
        self.hasher = hasher or PasswordHasher()
        self.clock = clock
        self.token_ttl = timedelta(hours=token_ttl_hours)
        # a constant decoy hash keeps login timing flat for unknown emails
        self._decoy = self.hasher.hash(secrets.token_hex(8))

    # -- credentials ---------------------------------------------------------

    def register(self, role: AuthorRole, email: str, password: str, principal_id: str) -> None:
        email = email.strip().lower()

        def apply(doc: dict) -> dict:
            bucket = doc.setdefault(role.value, {})
            if email in bucket:
                raise DuplicateEmail(f"{email} already registered as {role.value}")
            bucket[email] = {
                "principal_id": principal_id,
                "password_hash": self.hasher.hash(password),
            }
            return doc

        self.store.update("auth/credentials", apply)

    def _credential(self, role: AuthorRole, email: str) -> dict | None:
        doc = self.store.read("auth/credentials") or {}
        return doc.get(role.value, {}).get(email.strip().lower())

    def login(self, email: str, password: str) -> str | None:
        """Issue a session token on a correct password, else None.

        Unknown emails verify against a decoy hash so the work factor is
        the same as a wrong password.
        """
        for role in (AuthorRole.PATIENT, AuthorRole.DOCTOR):
            credential = self._credential(role, email)
            if credential is not None:
                if PasswordHasher.verify(password, credential["password_hash"]):
                    return self.issue_token(Principal(credential["principal_id"], role))
                return None
        PasswordHasher.verify(password, self._decoy)
        return None

    # -- sessions -------------------------------------------------------------

    def issue_token(self, principal: Principal) -> str:
        token = secrets.token_hex(16)
        expires = self.clock() + self.token_ttl

        def apply(doc: dict) -> dict:
            doc[token] = {
                "principal_id": principal.id,
                "role": principal.role.value,
                "expires_at": isoformat_utc(expires),
            }
            return doc

        self.store.update("auth/sessions", apply)
        return token

    def authenticate(self, token: str) -> Principal | None:
        doc = self.store.read("auth/sessions") or {}
        session = doc.get(token)
        if session is None:
            return None
        if parse_timestamp(session["expires_at"]) <= self.clock():
            return None
        return Principal(session["principal_id"], AuthorRole(session["role"]))

    # -- one-time passwords ------------------------------------------------------

    def otp_request(self, email: str, mailer: Mailer) -> None:
        email = email.strip().lower()
        if all(
            self._credential(role, email) is None
            for role in (AuthorRole.PATIENT, AuthorRole.DOCTOR)
        ):
            raise UnknownEmail(email)
        now = self.clock()
        code = f"{secrets.randbelow(10 ** 6):06d}"

        def apply(doc: dict) -> dict:
            challenge = doc.setdefault(email, {})
            window_start = now - timedelta(hours=1)
            recent = [
                stamp
                for stamp in challenge.get("requests", [])
                if parse_timestamp(stamp) > window_start
            ]
            if len(recent) >= OTP_MAX_REQUESTS_PER_HOUR:
                raise RateLimited(email)
            recent.append(isoformat_utc(now))
            challenge["requests"] = recent
            challenge["code"] = code
            challenge["expires_at"] = isoformat_utc(now + timedelta(minutes=OTP_TTL_MINUTES))
            challenge["consumed"] = False
            return doc

        self.store.update("auth/otp", apply)
        mailer.send(email, "Your one-time sign-in code", f"Your sign-in code is {code}")

    def otp_verify(self, email: str, code: str) -> str | None:
        email = email.strip().lower()
        doc = self.store.read("auth/otp") or {}
        challenge = doc.get(email)
        if not challenge or challenge.get("consumed"):
            return None
        if parse_timestamp(challenge["expires_at"]) <= self.clock():
            return None
        if not hmac.compare_digest(challenge.get("code", ""), code.strip()):
            return None

        def consume(document: dict) -> dict:
            document.get(email, {})["consumed"] = True
            return document

        self.store.update("auth/otp", consume)
        for role in (AuthorRole.PATIENT, AuthorRole.DOCTOR):
            credential = self._credential(role, email)
            if credential is not None:
                return self.issue_token(Principal(credential["principal_id"], role))
        return None
