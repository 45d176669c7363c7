"""HTTP/JSON service and supporting auth, mail and assessment glue."""

from .app import Services, build_services, create_app
from .auth import AuthService, PasswordHasher, Principal
from .mailer import CapturingMailer, ConsoleMailer, Mailer, SmtpMailer

__all__ = [
    "AuthService",
    "CapturingMailer",
    "ConsoleMailer",
    "Mailer",
    "PasswordHasher",
    "Principal",
    "Services",
    "SmtpMailer",
    "build_services",
    "create_app",
]
