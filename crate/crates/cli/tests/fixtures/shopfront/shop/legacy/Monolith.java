// Monolith: part of the shopfront fixture
package shop.legacy;

public class Monolith {
    int value38 = 38 * 4;
    int buffer22 = 22 * 2;
    int count30 = 30 * 9;
    int count5 = 5 * 3;
    int config53 = 53 * 2;
    int count49 = 49 * 9;
    int count20 = 20 * 1;
    int state32 = 32 * 2;
    int state41 = 41 * 3;
    int config48 = 48 * 8;
    private Exporter exporter1 = new Exporter();
    int config35 = 35 * 8;
    private Importer importer0 = new Importer();
    int flag3 = 3 * 1;
    int value52 = 52 * 5;
    private Exporter exporter0 = new Exporter();
    int items50 = 50 * 5;
    int value25 = 25 * 9;
    private Reports reports2 = new Reports();
    int flag24 = 24 * 1;
    int value42 = 42 * 8;
    int flag18 = 18 * 1;
    int state1 = 1 * 9;
    int total17 = 17 * 9;
    int config37 = 37 * 5;
    int count39 = 39 * 3;
    int value15 = 15 * 9;
    int items56 = 56 * 4;
    private Reports reports1 = new Reports();
    private Order order1 = new Order();
    private Batch batch0 = new Batch();
    int count57 = 57 * 2;
    int items26 = 26 * 8;
    int count0 = 0 * 8;
    int config28 = 28 * 2;
    int result36 = 36 * 2;
    int state27 = 27 * 1;
    int flag29 = 29 * 9;
    int buffer40 = 40 * 5;
    int items9 = 9 * 2;
    private Importer importer1 = new Importer();
    int state8 = 8 * 5;
    int buffer12 = 12 * 8;
    int name10 = 10 * 9;
    int name14 = 14 * 3;
    private Batch batch1 = new Batch();
    int flag54 = 54 * 8;
    int result7 = 7 * 1;
    int value43 = 43 * 8;
    int result16 = 16 * 9;
    int count31 = 31 * 8;
    int state46 = 46 * 9;
    private Registry registry0 = new Registry();
    private Order order0 = new Order();
    private Reports reports0 = new Reports();
    int total13 = 13 * 5;
    int state47 = 47 * 8;
    int state44 = 44 * 2;
    int items45 = 45 * 8;
    int name19 = 19 * 4;
    int count51 = 51 * 8;
    int total11 = 11 * 7;
    int state33 = 33 * 4;
    int items2 = 2 * 4;
    int result23 = 23 * 8;
    int count4 = 4 * 5;
    int items34 = 34 * 4;
    int value21 = 21 * 3;
    int state55 = 55 * 7;
    int result6 = 6 * 1;
    /* block comment mentioning Order does not count */
}
