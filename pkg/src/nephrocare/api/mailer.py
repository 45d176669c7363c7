"""Outbound mail: SMTP in production, a capturing double in tests."""

from __future__ import annotations

import logging
import smtplib
from dataclasses import dataclass, field
from email.message import EmailMessage
from typing import Protocol

logger = logging.getLogger(__name__)


class Mailer(Protocol):
    def send(self, to: str, subject: str, body: str) -> None: ...


@dataclass
class SmtpMailer:
    host: str
    port: int = 587
    username: str = ""
    password: str = ""
    sender: str = "nephrocare@localhost"

    def send(self, to: str, subject: str, body: str) -> None:
        message = EmailMessage()
        message["From"] = self.sender
        message["To"] = to
        message["Subject"] = subject
        message.set_content(body)
        with smtplib.SMTP(self.host, self.port, timeout=15) as smtp:
            smtp.starttls()
            if self.username:
                smtp.login(self.username, self.password)
            smtp.send_message(message)


@dataclass
class CapturingMailer:
    """Test double; keeps every message in memory."""

    messages: list[tuple[str, str, str]] = field(default_factory=list)

    def send(self, to: str, subject: str, body: str) -> None:
        self.messages.append((to, subject, body))

    @property
    def last_body(self) -> str:
        return self.messages[-1][2]


class ConsoleMailer:
    """Fallback when no SMTP host is configured; logs instead of sending."""

    def send(self, to: str, subject: str, body: str) -> None:
        logger.warning("no SMTP host configured; mail to %s (%s) not sent", to, subject)
