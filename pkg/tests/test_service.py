import http.client
import threading

import pytest

from csiec.nlml import normalized
from csiec.service import (
    ChatService,
    ServerConfig,
    ServiceError,
    decode_fields,
    encode_fields,
    make_server,
)


@pytest.fixture()
def service(tmp_path):
    cfg = ServerConfig(store_path=str(tmp_path / "dialog.log"))
    return ChatService(cfg)


def test_create_session(service):
    sid = service.create_session("curious")
    assert sid
    other = service.create_session("narrative")
    assert other != sid


def test_unknown_persona_lists_choices(service):
    with pytest.raises(ServiceError, match="curious, narrative, quiet"):
        service.create_session("bogus")


def test_post_message_flow(service):
    sid = service.create_session("curious")
    out = service.post_message(sid, "I give you a book today.")
    assert out["reply"] == "Why do you give me a book?"
    assert (out["user_turn"], out["system_turn"]) == ("0", "1")
    assert "<mood>statement</mood>" in out["nlml"]
    out2 = service.post_message(sid, "Hello!")
    assert "nlml" not in out2


def test_post_message_errors(service):
    sid = service.create_session("curious")
    with pytest.raises(ServiceError) as err:
        service.post_message("missing", "hi")
    assert err.value.status == 404
    with pytest.raises(ServiceError) as err:
        service.post_message(sid, "   ")
    assert err.value.status == 400


def test_history_endpoint(service):
    sid = service.create_session("quiet")
    service.post_message(sid, "I come today.")
    records = service.get_history(sid, 10)
    assert [r.speaker for r in records] == ["user", "system"]
    assert service.get_history(sid, 0) == []


def test_parse_endpoint_golden(service):
    out = service.parse_text("I give you a book today.")
    from pathlib import Path
    want = normalized((Path(__file__).parent / "fixtures" /
                       "table1_nlml.txt").read_text())
    assert normalized(out["nlml"]) == want
    assert out["trace"].splitlines()[0] == "Segment"


def test_parse_endpoint_no_parse(service):
    out = service.parse_text("asdf qwer.")
    assert out["error"] == "no_parse"
    assert "asdf" in out["unknown"]


def test_parse_endpoint_trace_labels(service):
    out = service.parse_text("I come today.")
    assert "subject(sing, first)" in out["trace"]
    assert "verb group(present, itr" in out["trace"]


def test_startup_fails_on_corrupt_data(tmp_path):
    bad = tmp_path / "lex.txt"
    bad.write_text("not a lexicon line\n")
    cfg = ServerConfig(lexicon_path=str(bad),
                       store_path=str(tmp_path / "d.log"))
    with pytest.raises(Exception):
        ChatService(cfg)


def test_config_precedence(tmp_path, monkeypatch):
    cfg_file = tmp_path / "server.cfg"
    cfg_file.write_text("port=9001\nstore_path=from_file.log\n")
    monkeypatch.setenv("CSIEC_PORT", "9002")
    cfg = ServerConfig.load(str(cfg_file), store_path="explicit.log")
    assert cfg.port == 9002          # env beats file
    assert cfg.store_path == "explicit.log"  # explicit beats env


def test_wire_format_roundtrip():
    fields = [("text", "line one\nline two\twith tab"), ("n", "42")]
    assert decode_fields(encode_fields(fields)) == dict(fields)


def test_concurrent_sessions_are_isolated_and_gapless(tmp_path):
    cfg = ServerConfig(store_path=str(tmp_path / "d.log"))
    service = ChatService(cfg)
    sessions = [service.create_session("curious") for _ in range(4)]
    errors = []

    def worker(sid, idx):
        try:
            for i in range(6):
                text = ("I give you a book today." if (i + idx) % 2
                        else "I come today.")
                service.post_message(sid, text)
        except Exception as exc:  # pragma: no cover
            errors.append(exc)

    threads = [threading.Thread(target=worker, args=(sid, i))
               for i, sid in enumerate(sessions)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    for sid in sessions:
        records = service.get_history(sid, 100)
        assert [r.turn for r in records] == list(range(12))
        assert all(r.session_id == sid for r in records)


def test_http_roundtrip(tmp_path):
    cfg = ServerConfig(host="127.0.0.1", port=0,
                       store_path=str(tmp_path / "d.log"))
    httpd, _ = make_server(cfg)
    port = httpd.server_address[1]
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    try:
        def post(path, **fields):
            conn = http.client.HTTPConnection("127.0.0.1", port, timeout=5)
            conn.request("POST", path, body=encode_fields(list(fields.items())))
            resp = conn.getresponse()
            return resp.status, decode_fields(resp.read().decode())

        status, out = post("/session", persona="curious")
        assert status == 200
        sid = out["session_id"]
        status, out = post("/message", session_id=sid,
                           text="I give you a book today.")
        assert status == 200
        assert out["reply"] == "Why do you give me a book?"
        status, out = post("/message", session_id="nope", text="hi")
        assert status == 404

        conn = http.client.HTTPConnection("127.0.0.1", port, timeout=5)
        conn.request("GET", f"/history?session_id={sid}&last_n=10")
        resp = conn.getresponse()
        assert resp.status == 200
        body = resp.read().decode()
        assert body.count("record=") == 2

        conn = http.client.HTTPConnection("127.0.0.1", port, timeout=5)
        conn.request("GET", "/personas")
        assert "curious" in conn.getresponse().read().decode()
    finally:
        httpd.shutdown()
        httpd.server_close()
