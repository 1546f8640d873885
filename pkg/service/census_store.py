import json
import logging
import os
from typing import Dict, List, Optional

import aiosqlite

import config
from service.classify import EnumerationReport
from utils.tools import fingerprint

logger = logging.getLogger(__name__)

class CensusStore:
    """普查报告缓存 - SQLite"""

    def __init__(self, db_path: str = None):
        self.db_path = db_path or config.CENSUS_DB
        self._initialized = False

        # 确保数据库目录存在
        os.makedirs(os.path.dirname(self.db_path), exist_ok=True)

    async def initialize(self):
        """初始化表结构"""
        if self._initialized:
            return

        try:
            async with aiosqlite.connect(self.db_path) as db:
                await db.execute("""
                CREATE TABLE IF NOT EXISTS reports (
                    key TEXT PRIMARY KEY,
                    variant TEXT NOT NULL,
                    degree INTEGER NOT NULL,
                    gamma_seed INTEGER NOT NULL,
                    tolerances TEXT NOT NULL,
                    payload TEXT NOT NULL,
                    created_at TEXT DEFAULT CURRENT_TIMESTAMP
                );
                """)
                await db.execute("CREATE INDEX IF NOT EXISTS idx_reports_degree ON reports(variant, degree);")
                await db.commit()
            self._initialized = True

        except Exception as e:
            logger.error(f"❌ 普查缓存初始化失败: {e}")
            raise

    @staticmethod
    def make_key(variant: str, degree: int, gamma_seed: int, tolerances: Dict[str, float]) -> str:
        """缓存键：变体、次数、种子与容差指纹"""
        return f"{variant}:{degree}:{gamma_seed}:{fingerprint(tolerances)}"

    async def load(self, key: str) -> Optional[EnumerationReport]:
        """读取缓存的报告"""
        if not self._initialized:
            await self.initialize()

        async with aiosqlite.connect(self.db_path) as db:
            db.row_factory = aiosqlite.Row
            cursor = await db.execute("SELECT payload FROM reports WHERE key = ?", (key,))
            row = await cursor.fetchone()

        if not row:
            return None
        try:
            return EnumerationReport.from_dict(json.loads(row['payload']))
        except (ValueError, KeyError) as e:
            logger.warning(f"⚠️ 缓存记录 {key} 无法解析，忽略: {e}")
            return None

    async def save(self, key: str, report: EnumerationReport) -> bool:
        """保存或覆盖报告"""
        if not self._initialized:
            await self.initialize()

        try:
            async with aiosqlite.connect(self.db_path) as db:
                await db.execute("""
                    INSERT OR REPLACE INTO reports (
                        key, variant, degree, gamma_seed, tolerances, payload
                    ) VALUES (?, ?, ?, ?, ?, ?)
                """, (
                    key, report.variant, report.degree_n, report.gamma_seed,
                    json.dumps(report.tolerances, sort_keys=True),
                    json.dumps(report.to_dict(), sort_keys=True),
                ))
                await db.commit()
            logger.info(f"💾 已缓存 {report.variant} N={report.degree_n}")
            return True

        except Exception as e:
            logger.error(f"❌ 缓存报告失败 {key}: {e}")
            return False

    async def list_keys(self) -> List[str]:
        if not self._initialized:
            await self.initialize()

        async with aiosqlite.connect(self.db_path) as db:
            cursor = await db.execute("SELECT key FROM reports ORDER BY variant, degree, gamma_seed")
            rows = await cursor.fetchall()
        return [row[0] for row in rows]

    async def clear(self) -> int:
        """清空缓存，返回删除的条数"""
        if not self._initialized:
            await self.initialize()

        async with aiosqlite.connect(self.db_path) as db:
            cursor = await db.execute("DELETE FROM reports")
            await db.commit()
            return cursor.rowcount
