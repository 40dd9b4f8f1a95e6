package sqlstore;

import sqlstore.db.DatabaseManager;

public class SqlStore {
    private final DatabaseManager manager;

    public SqlStore(DatabaseManager manager) {
        this.manager = manager;
    }

    public void open(String url) {
        manager.connect(url);
    }

    public void close() {
        manager.shutdown();
    }
}
