"""
Client for the external class-group oracle.

The oracle is a long-running process speaking one request line and one response line
at a time over stdin/stdout. OK responses are cached on disk keyed by the SHA-256 of
the request line.
"""

import asyncio
import hashlib
import logging
import os
import shlex
import tempfile
from pathlib import Path
from threading import Lock
from typing import Dict, List, Optional

from quintessa.config import Settings, get_settings
from quintessa.exceptions import OracleProtocolError, OracleUnavailable
from quintessa.models import ClassGroupRequest, OracleResponse

logger = logging.getLogger(__name__)


def request_key(request: ClassGroupRequest) -> str:
    return hashlib.sha256(request.line().encode()).hexdigest()


def parse_response(request: ClassGroupRequest, raw: str) -> OracleResponse:
    """
    Parse "OK <payload>" or "ERR <message>".

    Raises:
        OracleProtocolError: the line is neither form.
    """
    line = raw.strip()
    status, _, payload = line.partition(" ")
    if status not in ("OK", "ERR"):
        raise OracleProtocolError(f"unexpected oracle response to {request.line()}", raw)
    return OracleResponse(request=request.line(), ok=status == "OK", payload=payload.strip(), raw=line)


def elementary_divisors(response: OracleResponse) -> List[int]:
    """Space-separated elementary divisors of a CLASSGROUP5 payload."""
    try:
        return [int(token) for token in response.payload.split()]
    except ValueError:
        raise OracleProtocolError("CLASSGROUP5 payload is not a list of integers", response.raw)


def integer_payload(response: OracleResponse) -> int:
    try:
        return int(response.payload)
    except ValueError:
        raise OracleProtocolError(f"{response.request} payload is not an integer", response.raw)


class OracleCache:
    """Persistent response cache: one "sha256<TAB>response" record per line."""

    def __init__(self, path: Path):
        self.path = Path(path)
        self.lock = Lock()
        self.entries = self._load_cache()

    def _load_cache(self) -> Dict[str, str]:
        entries: Dict[str, str] = {}
        if not self.path.exists():
            return entries
        try:
            for line in self.path.read_text(encoding="utf-8").splitlines():
                key, sep, value = line.partition("\t")
                if sep:
                    entries[key] = value
        except OSError as e:
            logger.warning(f"Failed to load oracle cache {self.path}: {e}")
        return entries

    def _save_cache(self):
        self.path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.path.parent, prefix=".oracle_cache.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as f:
                for key, value in self.entries.items():
                    f.write(f"{key}\t{value}\n")
            os.replace(tmp, self.path)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

    def get(self, request: ClassGroupRequest) -> Optional[str]:
        return self.entries.get(request_key(request))

    def put(self, request: ClassGroupRequest, response_line: str):
        with self.lock:
            self.entries[request_key(request)] = response_line
            try:
                self._save_cache()
            except OSError as e:
                logger.warning(f"Failed to write oracle cache {self.path}: {e}")


class OracleClient:
    """Serialized access to one oracle process, with the response cache in front."""

    def __init__(
        self,
        command: Optional[str] = None,
        timeout: float = 600.0,
        cache: Optional[OracleCache] = None,
    ):
        self.command = command
        self.timeout = timeout
        self.cache = cache
        self.process: Optional[asyncio.subprocess.Process] = None
        self.lock = asyncio.Lock()

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None, command: Optional[str] = None):
        settings = settings or get_settings()
        return cls(
            command=command or settings.oracle_command,
            timeout=settings.oracle_timeout,
            cache=OracleCache(settings.oracle_cache),
        )

    async def __aenter__(self):
        return self

    async def __aexit__(self, exc_type, exc_val, exc_tb):
        await self.close()

    async def _ensure_process(self) -> asyncio.subprocess.Process:
        if self.process is not None and self.process.returncode is None:
            return self.process
        if not self.command:
            raise OracleUnavailable("no oracle command configured (set QUINTESSA_ORACLE_COMMAND)")
        try:
            self.process = await asyncio.create_subprocess_exec(
                *shlex.split(self.command),
                stdin=asyncio.subprocess.PIPE,
                stdout=asyncio.subprocess.PIPE,
                stderr=asyncio.subprocess.DEVNULL,
            )
        except OSError as e:
            raise OracleUnavailable(f"cannot start oracle {self.command!r}: {e}")
        logger.info(f"Started oracle process {self.process.pid}: {self.command}")
        return self.process

    async def query(self, request: ClassGroupRequest) -> OracleResponse:
        """
        Send one request, using the cache when possible.

        Raises:
            OracleUnavailable: no oracle, start failure, process exit or timeout.
            OracleProtocolError: malformed response line.
        """
        if self.cache is not None:
            cached = self.cache.get(request)
            if cached is not None:
                logger.debug(f"Oracle cache hit: {request.line()}")
                response = parse_response(request, cached)
                return response.model_copy(update={"cached": True})
            logger.debug(f"Oracle cache miss: {request.line()}")

        async with self.lock:
            process = await self._ensure_process()
            try:
                process.stdin.write(f"{request.line()}\n".encode())
                await process.stdin.drain()
                raw = await asyncio.wait_for(process.stdout.readline(), timeout=self.timeout)
            except asyncio.TimeoutError:
                logger.warning(f"Oracle timed out after {self.timeout}s on {request.line()}")
                await self._kill()
                raise OracleUnavailable(f"oracle timed out on {request.line()}")
            except (BrokenPipeError, ConnectionResetError) as e:
                await self._kill()
                raise OracleUnavailable(f"oracle process died: {e}")

        if not raw:
            await self._kill()
            raise OracleUnavailable("oracle process closed its output")
        text = raw.decode(errors="replace")
        try:
            response = parse_response(request, text)
        except OracleProtocolError:
            logger.error(f"Oracle protocol error for {request.line()}: {text!r}")
            raise
        if response.ok and self.cache is not None:
            self.cache.put(request, response.raw)
        return response

    async def _kill(self):
        if self.process is None:
            return
        if self.process.returncode is None:
            self.process.kill()
            await self.process.wait()
        self.process = None

    async def close(self):
        """Close stdin and wait for the oracle to exit."""
        if self.process is None:
            return
        if self.process.returncode is None:
            try:
                self.process.stdin.close()
                await asyncio.wait_for(self.process.wait(), timeout=5)
            except (asyncio.TimeoutError, BrokenPipeError, ConnectionResetError):
                await self._kill()
        logger.info("Oracle process stopped")
        self.process = None
