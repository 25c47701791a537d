"""
Tests for the oracle client, its cache and the oracle-backed row checks.
"""

import os

import pytest

from quintessa.classifier import predicted_structure
from quintessa.config import get_settings
from quintessa.exceptions import OracleProtocolError, OracleUnavailable
from quintessa.harness import load_table, shipped_fixtures, verify_rows, verify_with_oracle
from quintessa.models import ClassData, ClassGroupRequest
from quintessa.oracle import (
    OracleCache,
    OracleClient,
    elementary_divisors,
    integer_payload,
    parse_response,
    request_key,
)

REAL_ORACLE_COMMAND = os.environ.get("QUINTESSA_ORACLE_COMMAND")

GROUP_95 = ClassGroupRequest(kind="CLASSGROUP5", n=95)


@pytest.fixture
def cache(tmp_path):
    return OracleCache(tmp_path / "cache" / "oracle_cache.tsv")


class TestProtocol:
    def test_ok(self):
        response = parse_response(GROUP_95, "OK 5 5\n")
        assert response.ok
        assert response.request == "CLASSGROUP5 95"
        assert elementary_divisors(response) == [5, 5]

    def test_err(self):
        response = parse_response(GROUP_95, "ERR too large")
        assert not response.ok
        assert response.payload == "too large"

    def test_garbage(self):
        with pytest.raises(OracleProtocolError) as info:
            parse_response(GROUP_95, "(5, 5)")
        assert info.value.raw == "(5, 5)"

    def test_bad_payloads(self):
        with pytest.raises(OracleProtocolError):
            elementary_divisors(parse_response(GROUP_95, "OK five five"))
        with pytest.raises(OracleProtocolError):
            integer_payload(parse_response(GROUP_95, "OK 5 5"))

    def test_request_key_is_stable(self):
        assert request_key(GROUP_95) == request_key(ClassGroupRequest(kind="CLASSGROUP5", n=95))
        assert request_key(GROUP_95) != request_key(ClassGroupRequest(kind="HGAMMA", n=95))


class TestCache:
    def test_round_trip_through_disk(self, cache):
        cache.put(GROUP_95, "OK 5 5")
        reloaded = OracleCache(cache.path)
        assert reloaded.get(GROUP_95) == "OK 5 5"
        assert reloaded.get(ClassGroupRequest(kind="HGAMMA", n=95)) is None

    def test_no_temp_files_left(self, cache):
        cache.put(GROUP_95, "OK 5 5")
        assert [p.name for p in cache.path.parent.iterdir()] == ["oracle_cache.tsv"]


class TestClient:
    async def test_query_and_cache_hit(self, cache, fake_oracle, logged_requests):
        command, log_path = fake_oracle
        async with OracleClient(command("ok"), timeout=30, cache=cache) as client:
            first = await client.query(GROUP_95)
            second = await client.query(GROUP_95)
        assert first.ok and first.payload == "5 5" and not first.cached
        assert second.cached and second.payload == "5 5"
        assert logged_requests(log_path) == ["CLASSGROUP5 95"]

    async def test_errors_are_not_cached(self, cache, fake_oracle, logged_requests):
        command, log_path = fake_oracle
        async with OracleClient(command("err"), timeout=30, cache=cache) as client:
            first = await client.query(GROUP_95)
            await client.query(GROUP_95)
        assert not first.ok
        assert len(logged_requests(log_path)) == 2
        assert cache.get(GROUP_95) is None

    async def test_protocol_error(self, cache, fake_oracle):
        command, _ = fake_oracle
        async with OracleClient(command("garbage"), timeout=30, cache=cache) as client:
            with pytest.raises(OracleProtocolError):
                await client.query(GROUP_95)

    async def test_timeout(self, fake_oracle):
        command, _ = fake_oracle
        async with OracleClient(command("hang"), timeout=0.5) as client:
            with pytest.raises(OracleUnavailable, match="timed out"):
                await client.query(GROUP_95)
            assert client.process is None

    async def test_process_exits(self, fake_oracle):
        command, _ = fake_oracle
        async with OracleClient(command("exit"), timeout=30) as client:
            with pytest.raises(OracleUnavailable):
                await client.query(GROUP_95)

    async def test_no_command(self):
        client = OracleClient(None)
        with pytest.raises(OracleUnavailable, match="QUINTESSA_ORACLE_COMMAND"):
            await client.query(GROUP_95)

    async def test_missing_executable(self, tmp_path):
        client = OracleClient(str(tmp_path / "no-such-oracle"))
        with pytest.raises(OracleUnavailable):
            await client.query(GROUP_95)

    def test_from_settings(self, monkeypatch, tmp_path):
        monkeypatch.setenv("QUINTESSA_ORACLE_COMMAND", "gp -q oracle.gp")
        monkeypatch.setenv("QUINTESSA_ORACLE_TIMEOUT", "12.5")
        client = OracleClient.from_settings(get_settings())
        assert client.command == "gp -q oracle.gp"
        assert client.timeout == 12.5
        assert client.cache.path == tmp_path / "oracle_cache.tsv"
        assert OracleClient.from_settings(command="other").command == "other"


@pytest.fixture
def table3_report():
    rows = load_table(shipped_fixtures()[2])[:3]
    return verify_rows(rows, workers=1)


class TestVerifyWithOracle:
    async def test_consistent_oracle(self, table3_report, cache, fake_oracle):
        command, _ = fake_oracle
        async with OracleClient(command("ok"), timeout=30, cache=cache) as client:
            report = await verify_with_oracle(table3_report, client)
        for row in report.rows:
            assert row.category_status("oracle") == "PASS"
            assert row.status == "FLAG"
            names = [check.name for check in row.checks if check.category == "oracle"]
            assert names == [
                "class group matches claimed type",
                "index formula consistent with claimed type",
            ]

    async def test_unavailable_oracle_skips(self, table3_report):
        report = await verify_with_oracle(table3_report, OracleClient(None))
        for row in report.rows:
            assert row.category_status("oracle") == "SKIP"
            assert row.status == "FLAG"

    async def test_err_responses_skip(self, table3_report, fake_oracle):
        command, _ = fake_oracle
        async with OracleClient(command("err"), timeout=30) as client:
            report = await verify_with_oracle(table3_report, client)
        assert all(row.category_status("oracle") == "SKIP" for row in report.rows)
        assert not report.failed


@pytest.mark.oracle
@pytest.mark.skipif(not REAL_ORACLE_COMMAND, reason="QUINTESSA_ORACLE_COMMAND is not set")
@pytest.mark.parametrize("n", [95, 57, 149])
async def test_real_oracle_type_55(n, cache):
    async with OracleClient(REAL_ORACLE_COMMAND, timeout=get_settings().oracle_timeout, cache=cache) as client:
        group = await client.query(ClassGroupRequest(kind="CLASSGROUP5", n=n))
        h_gamma = await client.query(ClassGroupRequest(kind="HGAMMA", n=n))
        u_index = await client.query(ClassGroupRequest(kind="UINDEX", n=n))
    assert sorted(elementary_divisors(group)) == [5, 5]
    verdict = predicted_structure(
        ClassData(u_value=integer_payload(u_index), h_gamma=integer_payload(h_gamma), source="oracle")
    )
    assert verdict.v5_h_gamma == 1
    assert verdict.v5_u == 3
    assert verdict.type_55_possible
