"""Bearer-token authentication and the role checks used by the routes."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import AuthenticationFailed, Forbidden
from ..roster import Role, User
from ..storage import Store


@dataclass(frozen=True)
class AuthContext:
    user: User
    token: str

    @property
    def role(self) -> Role:
        return self.user.role

    @property
    def user_id(self) -> str:
        return self.user.id


def authenticate(store: Store, authorization: str | None) -> AuthContext:
    if not authorization or not authorization.startswith("Bearer "):
        raise AuthenticationFailed("missing bearer token")
    token = authorization.removeprefix("Bearer ").strip()
    info = store.check_token(token)
    if info is None:
        raise AuthenticationFailed("unknown or expired token")
    user = store.get_user(info.user_id)
    if user is None:
        raise AuthenticationFailed("token subject no longer exists")
    return AuthContext(user=user, token=token)


def require_role(ctx: AuthContext, *allowed: Role) -> None:
    if ctx.role not in allowed:
        raise Forbidden(f"role {ctx.role.value} may not perform this action")


def can_view_student(ctx: AuthContext, student: User) -> bool:
    if ctx.user_id == student.id:
        return True
    if ctx.role is Role.TEACHER and student.teacher_id == ctx.user_id:
        return True
    return ctx.role in (Role.ADMINISTRATOR, Role.SYSTEM_ADMINISTRATOR)
