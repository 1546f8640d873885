import asyncio

from service.census_store import CensusStore


def test_make_key_depends_on_settings():
    a = CensusStore.make_key("Full", 4, 1, {'dedup': 1e-6, 'precision': 'extended'})
    b = CensusStore.make_key("Full", 4, 1, {'precision': 'extended', 'dedup': 1e-6})
    c = CensusStore.make_key("Full", 4, 2, {'dedup': 1e-6, 'precision': 'extended'})
    d = CensusStore.make_key("Full", 4, 1, {'dedup': 1e-7, 'precision': 'extended'})
    assert a == b
    assert len({a, c, d}) == 3
    assert a.startswith("Full:4:1:")


def test_save_load_and_clear(tmp_path, census):
    report = census(3)
    store = CensusStore(str(tmp_path / "db" / "census.db"))
    key = CensusStore.make_key(report.variant, report.degree_n, report.gamma_seed, report.tolerances)

    async def scenario():
        assert await store.load(key) is None
        assert await store.save(key, report)
        loaded = await store.load(key)
        keys = await store.list_keys()
        removed = await store.clear()
        return loaded, keys, removed, await store.load(key)

    loaded, keys, removed, after = asyncio.run(scenario())
    assert loaded.to_dict() == report.to_dict()
    assert keys == [key]
    assert removed == 1
    assert after is None
